"""Finitely presented groups used for the surgery quotients, and their abelianizations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .slopes import KnotSpec, Slope
from .words import Word, parse_word


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple
    name: str = ""

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be distinct")
        rels = []
        for r in self.relators:
            if isinstance(r, str):
                r = parse_word(r, gens)
            r = r.cyclically_reduced()
            if r.max_generator() >= len(gens):
                raise ValueError("relator uses a generator index out of range")
            rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self, w: Word) -> str:
        return w.format(self.generators)

    def with_relators(self, extra, name: str = "") -> "Presentation":
        extra = [self.word(r) if isinstance(r, str) else r for r in extra]
        return Presentation(self.generators, self.relators + tuple(extra), name or self.name)

    def involutions(self) -> frozenset:
        """Generators g whose square g^2 is among the relators."""
        out = set()
        for r in self.relators:
            if len(r) == 2 and r.letters[0] == r.letters[1]:
                out.add(r.letters[0][0])
        return frozenset(out)

    def relation_matrix(self) -> list:
        return [list(r.exponent_sums(self.n_generators)) for r in self.relators]

    def to_json(self) -> dict:
        return {"name": self.name, "generators": list(self.generators),
                "relators": [self.format(r) for r in self.relators]}

    @classmethod
    def from_json(cls, obj: dict) -> "Presentation":
        return cls(tuple(obj["generators"]), tuple(obj["relators"]), obj.get("name", ""))

    def __str__(self) -> str:
        rels = ", ".join(self.format(r) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


PRETZEL_GENERATORS = ("x", "y", "z")


def _pw(block: str, n: int) -> str:
    return f"({block})^{n}"


def pretzel_relations(p: int, q: int) -> list:
    """The three Wirtinger relations as (left, right) word pairs."""
    KnotSpec(p, q)
    hp, Hp, hq, Hq = (p - 1) // 2, (p + 1) // 2, (q - 1) // 2, (q + 1) // 2
    w = lambda s: parse_word(s, PRETZEL_GENERATORS)
    return [
        (w(f"{_pw('zx', hp)} z {_pw('zx', -hp)}"), w(f"{_pw('yx', -Hq)} y {_pw('yx', Hq)}")),
        (w("(yZ)^-1 y (yZ)"), w(f"{_pw('yx', -hq)} x {_pw('yx', hq)}")),
        (w("(yZ)^-1 z (yZ)"), w(f"{_pw('zx', Hp)} x {_pw('zx', -Hp)}")),
    ]


def pretzel_presentation(p: int, q: int) -> Presentation:
    rels = [lhs * rhs.inverse() for lhs, rhs in pretzel_relations(p, q)]
    return Presentation(PRETZEL_GENERATORS, tuple(rels), f"pretzel(-2,{p},{q})")


def longitude_word(p: int, q: int) -> Word:
    KnotSpec(p, q)
    hp, Hp, hq, Hq = (p - 1) // 2, (p + 1) // 2, (q - 1) // 2, (q + 1) // 2
    text = (f"x^{-2 * (p + q)} {_pw('yx', hq)} (yZ)^-1 {_pw('yx', Hq)} "
            f"{_pw('zx', hp)} (yZ) {_pw('zx', Hp)}")
    return parse_word(text, PRETZEL_GENERATORS)


def surgered_presentation(p: int, q: int, s) -> Presentation:
    s = Slope.of(s)
    if not s.is_integral:
        raise ValueError(f"only integral slopes have a surgered presentation here, got {s}")
    base = pretzel_presentation(p, q)
    rel = Word.gen(0, s.num) * longitude_word(p, q)
    return base.with_relators([rel], f"pretzel(-2,{p},{q})({s})")


def coxeter_2pq2(p: int, q: int) -> Presentation:
    """(2,p,q;2) = <a, b | a^p, b^q, (ab)^2, (a^2 b^2)^2>."""
    return Presentation(("a", "b"), (f"a^{p}", f"b^{q}", "(ab)^2", "(a^2b^2)^2"),
                        f"(2,{p},{q};2)")


def coxeter_Gmpq(m: int, p: int, q: int) -> Presentation:
    """G^{m,p,q} = <A, B, C | A^p, B^q, C^m, (AB)^2, (BC)^2, (CA)^2, (ABC)^2>."""
    if m not in (3, 5):
        raise ValueError(f"m must be 3 or 5, got {m}")
    rels = (f"A^{p}", f"B^{q}", f"C^{m}", "(AB)^2", "(BC)^2", "(CA)^2", "(ABC)^2")
    return Presentation(("A", "B", "C"), rels, f"G^({m},{p},{q})")


def c5_presentation(p: int, q: int) -> Presentation:
    """<A, B, C | A^p, B^q, (AB)^2, (BC)^2, (CA)^2, C (A^2 B^2)^-2>: G^{5,p,q} before C^5."""
    rels = (f"A^{p}", f"B^{q}", "(AB)^2", "(BC)^2", "(CA)^2", "C(A^2B^2)^-2")
    return Presentation(("A", "B", "C"), rels, f"G^(*,{p},{q})")


# --- Smith normal form -----------------------------------------------------

def smith_normal_form(matrix: Sequence[Sequence[int]], n_cols: int = None) -> tuple:
    """(diagonal, V) with U M V = diag for some unimodular U; V is the column transform."""
    A = [list(map(int, r)) for r in matrix]
    m = len(A)
    n = n_cols if n_cols is not None else (len(A[0]) if A else 0)
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_col(src, dst, c):  # col dst += c * col src
        for r in A:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        swap_cols(t, j)
        while True:
            piv = A[t][t]
            done = True
            for i in range(t + 1, m):
                c = A[i][t] // piv
                if c:
                    A[i] = [a - c * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                c = A[t][j] // piv
                if c:
                    add_col(t, j, -c)
                if A[t][j]:
                    done = False
            if done:
                # divisibility of the remaining block by the pivot
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % piv), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cand)
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
        diag.append(A[t][t])
        t += 1
    return diag, V


@dataclass(frozen=True)
class Abelianization:
    free_rank: int
    torsion: tuple

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def abelianization(pres: Presentation) -> Abelianization:
    n = pres.n_generators
    diag, _ = smith_normal_form(pres.relation_matrix(), n)
    torsion = tuple(d for d in diag if d > 1)
    return Abelianization(n - len(diag), torsion)


def in_relation_lattice(pres: Presentation, vector: Sequence[int]) -> bool:
    """Whether an exponent-sum vector is an integer combination of relator rows."""
    n = pres.n_generators
    diag, V = smith_normal_form(pres.relation_matrix(), n)
    w = [sum(vector[i] * V[i][j] for i in range(n)) for j in range(n)]
    for j in range(n):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            if w[j]:
                return False
        elif w[j] % d:
            return False
    return True
