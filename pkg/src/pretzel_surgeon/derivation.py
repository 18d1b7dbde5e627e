"""Bounded search for derivations of the trivial word from relators.

States are cyclically reduced words (conjugation does not change triviality).  A
step inserts a cyclic shift of a relator or of its inverse at a position of the
current word and reduces.  Generators whose square is a relator are treated as
involutions during reduction (g^-1 is rewritten to g and gg cancels); this is the
same as inserting that square relator, so the replayer applies the same rule.

The search is best-first by word length.  Children of an expanded word are
generated once, sorted by length, and released lazily: only those no longer than
the current frontier length are pushed, the remainder is parked as a single queue
entry.  Ties are broken last-in first-out, which follows a promising chain deep
before widening.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .presentations import Presentation
from .words import Word

DEFAULT_MAX_LEN = 40
DEFAULT_MAX_STEPS = 200000


def _to_str(w: Word) -> str:
    return "".join(chr(97 + g) if e > 0 else chr(65 + g) for g, e in w.letters)


class _Reducer:
    def __init__(self, involutions):
        self.inv = frozenset(chr(97 + g) for g in involutions)

    def normalize(self, w: str) -> str:
        inv = self.inv
        if inv:
            w = "".join(c.lower() if c.lower() in inv else c for c in w)
        out = []
        for ch in w:
            if out and (out[-1] == ch.swapcase() or (ch in inv and out[-1] == ch)):
                out.pop()
            else:
                out.append(ch)
        i, j = 0, len(out)
        while j - i >= 2 and (out[i] == out[j - 1].swapcase() or (out[i] in inv and out[i] == out[j - 1])):
            i += 1
            j -= 1
        return "".join(out[i:j])

    def insert(self, w: str, pos: int, r: str) -> str:
        return self.normalize(w[:pos] + r + w[pos:])


def _canon(w: str) -> str:
    n = len(w)
    if not n:
        return w
    ww = w + w
    return min(ww[i:i + n] for i in range(n))


def _inverse_str(r: str) -> str:
    return r[::-1].swapcase()


def _variants(rels: Sequence[str]) -> list:
    """(inserted word, relator index, shift, flip) for every cyclic shift and inversion."""
    out, seen = [], set()
    for idx, r in enumerate(rels):
        for flip, rr in ((False, r), (True, _inverse_str(r))):
            for s in range(len(rr)):
                v = rr[s:] + rr[:s]
                if v not in seen:
                    seen.add(v)
                    out.append((v, idx, s, flip))
    return out


def relator_variant(rel: str, shift: int, flip: bool) -> str:
    rr = _inverse_str(rel) if flip else rel
    return rr[shift:] + rr[:shift]


@dataclass(frozen=True)
class Step:
    position: int
    relator: int
    shift: int
    flip: bool

    def to_json(self) -> list:
        return [self.position, self.relator, self.shift, int(self.flip)]


@dataclass(frozen=True)
class DerivationCertificate:
    start: Word
    steps: tuple
    involutions: tuple = ()

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {"start": self.start.to_json(), "involutions": list(self.involutions),
                "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, obj: dict) -> "DerivationCertificate":
        steps = tuple(Step(a, b, c, bool(d)) for a, b, c, d in obj["steps"])
        return cls(Word.from_json(obj["start"]), steps, tuple(obj.get("involutions", ())))


@dataclass
class SearchResult:
    certificate: Optional[DerivationCertificate]
    expansions: int
    states: int
    exhausted: bool = field(default=False)

    @property
    def found(self) -> bool:
        return self.certificate is not None

    @property
    def status(self) -> str:
        return "proved" if self.found else "budget-exhausted"


def replay(pres: Presentation, cert: DerivationCertificate) -> bool:
    """Apply the certificate's insertions to its start word; True iff the result is empty."""
    invs = set(cert.involutions)
    if not invs <= set(pres.involutions()):
        return False
    red = _Reducer(invs)
    rels = [_to_str(r) for r in pres.relators]
    cur = red.normalize(_to_str(cert.start))
    for st in cert.steps:
        if not (0 <= st.relator < len(rels)) or not (0 <= st.position <= len(cur)):
            return False
        rel = rels[st.relator]
        if not (0 <= st.shift < max(1, len(rel))):
            return False
        cur = red.insert(cur, st.position, relator_variant(rel, st.shift, st.flip))
    return cur == ""


def derivation_search(pres: Presentation, w: Word, max_len: int = DEFAULT_MAX_LEN,
                      max_steps: int = DEFAULT_MAX_STEPS,
                      use_involutions: bool = True) -> SearchResult:
    """Search for a derivation of w = 1.  Failure is inconclusive, never a proof of nontriviality."""
    if max_len <= 0 or max_steps <= 0:
        raise ValueError("budgets must be positive")
    invs = tuple(sorted(pres.involutions())) if use_involutions else ()
    red = _Reducer(invs)
    rels = [_to_str(r) for r in pres.relators]
    variants = _variants(rels)
    by_first, by_last = {}, {}
    for v in variants:
        if not v[0]:
            continue
        by_first.setdefault(v[0][0].swapcase(), []).append(v)
        by_last.setdefault(v[0][-1].swapcase(), []).append(v)

    start = red.normalize(_to_str(w))
    nodes = [(start, -1, None)]  # (word, parent id, step)
    seen = {_canon(start)}
    counter = 0
    expansions = 0
    # queue entries: (length, -counter, node id, parked children or None, offset)
    heap = [(len(start), 0, 0, None, 0)]
    while heap and expansions < max_steps:
        length, _, nid, parked, off = heapq.heappop(heap)
        if parked is None:
            cur = nodes[nid][0]
            expansions += 1
            if not cur:
                return SearchResult(_certificate(nodes, nid, w, invs), expansions, len(seen))
            children = []
            n = len(cur)
            for i in range(n):
                left, right = cur[i - 1], cur[i]
                cands = by_first.get(left, [])
                cands = cands + [v for v in by_last.get(right, []) if v[0][0] != left.swapcase()]
                for v, idx, s, flip in cands:
                    new = red.insert(cur, i, v)
                    if len(new) <= max_len:
                        children.append((len(new), new, Step(i, idx, s, flip)))
            children.sort(key=lambda c: c[0])
            parked, off = children, 0
        while off < len(parked) and parked[off][0] <= length:
            _, new, step = parked[off]
            off += 1
            key = _canon(new)
            if key in seen:
                continue
            seen.add(key)
            nodes.append((new, nid, step))
            counter += 1
            heapq.heappush(heap, (len(new), -counter, len(nodes) - 1, None, 0))
        if off < len(parked):
            counter += 1
            heapq.heappush(heap, (parked[off][0], -counter, nid, parked, off))
    return SearchResult(None, expansions, len(seen), exhausted=not heap)


def _certificate(nodes, nid, w, invs) -> DerivationCertificate:
    steps = []
    while nodes[nid][1] >= 0:
        steps.append(nodes[nid][2])
        nid = nodes[nid][1]
    return DerivationCertificate(w, tuple(reversed(steps)), invs)


def power_certificate(pres: Presentation, gen: int, exponent: int, k: int) -> DerivationCertificate:
    """Certificate that g^(k*exponent) = 1 given g^exponent as a relator of pres.

    Each step removes one block g^exponent from the end of the word, so the
    certificate has k steps.
    """
    target = Word.gen(gen, exponent)
    idx = next((i for i, r in enumerate(pres.relators) if r == target), None)
    if idx is None:
        raise ValueError("presentation lacks the power relator")
    steps = []
    for t in range(k, 0, -1):
        steps.append(Step(exponent * t, idx, 0, True))
    return DerivationCertificate(Word.gen(gen, k * exponent), tuple(steps))
