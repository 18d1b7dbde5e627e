"""Degeneration scan for ideal points of the deformation variety.

A degeneration type assigns 0, 1 or inf to every tetrahedron, the value its shape
tends to.  Near such an ideal point the valuations of z_k and 1 - z_k are
proportional to a vector d of signed maximal minors; when d has one strict sign
the type carries an ideal point whose boundary slope is -v(L)/v(M).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .gluing import GluingSystem, to_log_form
from .slopes import Slope

ZERO, ONE, INF = "0", "1", "inf"
KINDS = (ZERO, ONE, INF)


def parse_type(text) -> tuple:
    if isinstance(text, (tuple, list)):
        items = list(text)
    else:
        items = text.replace("(", "").replace(")", "").split(",")
    out = []
    for it in items:
        it = str(it).strip().lower()
        if it in ("inf", "infinity", "oo", "∞"):
            out.append(INF)
        elif it in (ZERO, ONE):
            out.append(it)
        else:
            raise ValueError(f"bad degeneration entry {it!r}")
    return tuple(out)


def format_type(I) -> str:
    return "(" + ",".join("∞" if x == INF else x for x in I) + ")"


def bareiss_det(rows) -> int:
    """Exact determinant of a square integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


def degeneration_matrix(sys: GluingSystem, I, drop: int = -1) -> list:
    """Rows r(I)_j: r'' where the shape tends to 1, r' where 0, -r' - r'' where inf."""
    I = parse_type(I)
    if len(I) != sys.n:
        raise ValueError(f"degeneration type needs {sys.n} entries")
    out = []
    for lr in sys.log_rows(drop):
        row = []
        for k, kind in enumerate(I):
            if kind == ONE:
                row.append(lr.wexp[k])
            elif kind == ZERO:
                row.append(lr.zexp[k])
            else:
                row.append(-lr.zexp[k] - lr.wexp[k])
        out.append(row)
    return out


def _minor(matrix, k: int) -> int:
    return bareiss_det([r[:k] + r[k + 1:] for r in matrix])


def d_vector(matrix) -> tuple:
    """Alternating-sign maximal minors (R_0, -R_1, R_2, ...) of an (n-1) x n matrix."""
    matrix = [list(r) for r in matrix]
    n = len(matrix[0]) if matrix else 1
    if len(matrix) != n - 1:
        raise ValueError("matrix must have one fewer row than columns")
    return tuple((-1) ** k * _minor(matrix, k) for k in range(n))


def _one_signed_d(matrix):
    """d if every entry has one strict sign, else None; stops at the first failure."""
    n = len(matrix[0])
    out, sgn = [], 0
    for k in range(n):
        v = (-1) ** k * _minor(matrix, k)
        if v == 0:
            return None
        s = 1 if v > 0 else -1
        if sgn and s != sgn:
            return None
        sgn = s
        out.append(v)
    return tuple(out)


def shape_valuations(I, d) -> list:
    """(v(z_k), v(1 - z_k)) for each tetrahedron."""
    out = []
    for kind, dk in zip(parse_type(I), d):
        if kind == ZERO:
            out.append((dk, 0))
        elif kind == ONE:
            out.append((0, dk))
        else:
            out.append((-dk, -dk))
    return out


def word_valuation(valuations, word) -> int:
    lr = to_log_form(word)
    return sum(a * vz + b * vw for a, b, (vz, vw) in zip(lr.zexp, lr.wexp, valuations))


def peripheral_valuation(sys: GluingSystem, I, d: Sequence[int], word) -> int:
    if not (all(x > 0 for x in d) or all(x < 0 for x in d)):
        raise ValueError("d must have one strict sign")
    if len(d) != sys.n:
        raise ValueError(f"d needs {sys.n} entries")
    return word_valuation(shape_valuations(I, d), word)


def normalize_sign(d: Sequence[int]) -> tuple:
    for x in d:
        if x:
            return tuple(d) if x > 0 else tuple(-y for y in d)
    return tuple(d)


@dataclass(frozen=True)
class IdealPointRecord:
    I: tuple
    d: tuple        # sign-normalized, first entry positive
    raw_d: tuple    # as produced by the alternating minors
    vM: int
    vL: int
    slope: Slope

    def to_json(self) -> dict:
        return {"I": list(self.I), "d": list(self.d), "raw_d": list(self.raw_d),
                "vM": self.vM, "vL": self.vL, "slope": str(self.slope)}

    @classmethod
    def from_json(cls, obj: dict) -> "IdealPointRecord":
        return cls(tuple(obj["I"]), tuple(obj["d"]), tuple(obj["raw_d"]), obj["vM"], obj["vL"],
                   Slope.parse(obj["slope"]))


def record_for(sys: GluingSystem, I, raw_d) -> "IdealPointRecord | None":
    d = normalize_sign(raw_d)
    vals = shape_valuations(I, d)
    vM = word_valuation(vals, sys.meridian)
    vL = word_valuation(vals, sys.longitude)
    if vM == 0:
        return None
    return IdealPointRecord(tuple(I), d, tuple(raw_d), vM, vL, Slope(-vL, vM))


def scan_degenerations(sys: GluingSystem, drop: int = -1) -> list:
    """All degeneration types with a one-signed d vector and v(M) != 0."""
    rows = [(lr.zexp, lr.wexp) for lr in sys.log_rows(drop)]
    out = []
    for I in itertools.product(KINDS, repeat=sys.n):
        matrix = []
        for zexp, wexp in rows:
            matrix.append([wexp[k] if kind == ONE else zexp[k] if kind == ZERO
                           else -zexp[k] - wexp[k] for k, kind in enumerate(I)])
        d = _one_signed_d(matrix)
        if d is None:
            continue
        rec = record_for(sys, I, d)
        if rec is not None:
            out.append(rec)
    return out
