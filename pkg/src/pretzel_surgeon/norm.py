"""Culler-Shalen total-norm model and exact integer minimization.

The norm of a slope s is 2 * sum_j a_j * distance(s, beta_j) over the boundary
slopes beta_j.  The coefficients a_j are unknown non-negative integers subject to
detection lower bounds, a parity rule at odd-numerator slopes, and the total-norm
equation sum_j a_j * distance(1/0, beta_j) = S/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .slopes import (BoundarySlopeTable, KnotSpec, MERIDIAN, Slope, boundary_slopes,
                     distance)

EXCLUDED = "excluded"
NOT_EXCLUDED = "not_excluded"
EXCLUDED_BY_GROUP_THEORY = "excluded_by_group_theory"
BOUNDARY_SLOPE = "boundary_slope"
ASSERTED = "asserted"
STATUSES = (EXCLUDED, NOT_EXCLUDED, EXCLUDED_BY_GROUP_THEORY, BOUNDARY_SLOPE, ASSERTED)


class InfeasibleModel(ValueError):
    pass


def minimal_norm(knot: KnotSpec) -> int:
    return 2 * knot.p * knot.q - 3 * (knot.p + knot.q)


@dataclass(frozen=True)
class NormModel:
    knot: KnotSpec
    boundary: tuple
    lower_bounds: tuple
    parity_even: tuple
    total: int

    def __post_init__(self):
        n = len(self.boundary)
        if not (len(self.lower_bounds) == len(self.parity_even) == n):
            raise ValueError("per-slope fields must have one entry per boundary slope")
        for L, ev in zip(self.lower_bounds, self.parity_even):
            if L < 0 or (ev and L % 2):
                raise ValueError("lower bounds must be non-negative and respect parity")

    @property
    def weights(self) -> tuple:
        return tuple(distance(MERIDIAN, b) for b in self.boundary)

    def is_feasible(self, a: Sequence[int]) -> bool:
        if len(a) != len(self.boundary):
            return False
        for x, L, ev in zip(a, self.lower_bounds, self.parity_even):
            if x < L or (ev and x % 2):
                return False
        return sum(x * w for x, w in zip(a, self.weights)) == self.total

    def scaled(self, c: int) -> "NormModel":
        return NormModel(self.knot, self.boundary, tuple(c * L for L in self.lower_bounds),
                         self.parity_even, c * self.total)

    def to_json(self) -> dict:
        return {"knot": [self.knot.p, self.knot.q],
                "boundary": [b.to_json() for b in self.boundary],
                "lower_bounds": list(self.lower_bounds),
                "parity_even": list(self.parity_even),
                "total": self.total}


def assemble_constraints(knot: KnotSpec, detections, table: Optional[BoundarySlopeTable] = None
                         ) -> NormModel:
    """Build the norm model from detected boundary slopes and their ideal-point counts."""
    if table is None:
        table = boundary_slopes(knot)
    if not table.complete:
        raise ValueError(f"boundary-slope table for {knot} is partial")
    if isinstance(detections, Mapping):
        detections = detections.items()
    counts = {}
    for s, c in detections:
        s = Slope.of(s)
        if s not in table:
            raise ValueError(f"detected slope {s} is not a boundary slope of {knot}")
        counts[s] = max(counts.get(s, 0), int(c))
    lower, parity = [], []
    for b in table.slopes:
        even = b.num % 2 == 1
        L = counts.get(b, 0)
        if even and L % 2:
            L += 1
        lower.append(L)
        parity.append(even)
    S = minimal_norm(knot)
    return NormModel(knot, table.slopes, tuple(lower), tuple(parity), S // 2)


def norm_value(model: NormModel, a: Sequence[int], s: Slope) -> int:
    if len(a) != len(model.boundary):
        raise ValueError(f"expected {len(model.boundary)} coefficients, got {len(a)}")
    return 2 * sum(x * distance(s, b) for x, b in zip(a, model.boundary))


def feasible_vectors(model: NormModel) -> Iterable[tuple]:
    """All feasible coefficient vectors in lexicographic order."""
    w, L, ev = model.weights, model.lower_bounds, model.parity_even
    n = len(w)
    tail_min = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        tail_min[j] = tail_min[j + 1] + L[j] * w[j]
    cur = [0] * n

    def rec(j, rem):
        if j == n:
            if rem == 0:
                yield tuple(cur)
            return
        step = 2 if ev[j] else 1
        x = L[j]
        while x * w[j] + tail_min[j + 1] <= rem:
            cur[j] = x
            yield from rec(j + 1, rem - x * w[j])
            x += step

    yield from rec(0, model.total)


def min_norm_over_feasible(model: NormModel, s: Slope,
                           nonzero_among: Optional[Sequence[int]] = None) -> tuple:
    """Exact minimum of the norm of s and the lexicographically least minimizer.

    nonzero_among, when given, additionally requires some listed coefficient to be positive.
    """
    w, L, ev = model.weights, model.lower_bounds, model.parity_even
    c = [distance(s, b) for b in model.boundary]
    n = len(w)
    tail_min = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        tail_min[j] = tail_min[j + 1] + L[j] * w[j]
    # cheapest cost per unit of weight among the remaining coordinates
    ratio = [0.0] * (n + 1)
    ratio[n] = float("inf")
    for j in range(n - 1, -1, -1):
        ratio[j] = min(ratio[j + 1], c[j] / w[j])
    need = set(nonzero_among or ())
    best = [None, None]
    cur = [0] * n

    def rec(j, rem, cost):
        if j == n:
            if rem != 0:
                return
            if need and not any(cur[i] > 0 for i in need):
                return
            if best[0] is None or cost < best[0]:
                best[0], best[1] = cost, tuple(cur)
            return
        if best[0] is not None and cost + ratio[j] * rem >= best[0] + 1e-9 and ratio[j] != float("inf"):
            return
        step = 2 if ev[j] else 1
        x = L[j]
        while x * w[j] + tail_min[j + 1] <= rem:
            cur[j] = x
            rec(j + 1, rem - x * w[j], cost + x * c[j])
            x += step
        cur[j] = 0

    rec(0, model.total, 0)
    if best[0] is None:
        raise InfeasibleModel(f"no feasible coefficient vector for {model.knot}")
    return 2 * best[0], best[1]


def norm_lower_bound(model: NormModel, s: Slope, subset: Iterable) -> int:
    idx = {b: j for j, b in enumerate(model.boundary)}
    total = 0
    for r in subset:
        r = Slope.of(r)
        if r not in idx:
            raise ValueError(f"{r} is not a boundary slope of the model")
        total += model.lower_bounds[idx[r]] * distance(s, r)
    return 2 * total


@dataclass(frozen=True)
class Verdict:
    slope: Slope
    min_norm: Optional[int]
    bound_used: Optional[int]
    bound_label: str
    status: str

    def to_json(self) -> dict:
        return {"slope": str(self.slope), "min_norm": self.min_norm,
                "bound_used": self.bound_used, "bound_label": self.bound_label,
                "status": self.status}


def finite_slope_bound(knot: KnotSpec, s: Slope) -> tuple:
    """The largest norm a finite slope can have: 2S for even integers, else S+8."""
    S = minimal_norm(knot)
    return (2 * S, "2S") if s.is_even_integer else (S + 8, "S+8")


def finite_slope_verdict(model: NormModel, s: Slope, min_norm: int) -> Verdict:
    bound, label = finite_slope_bound(model.knot, s)
    status = EXCLUDED if min_norm > bound else NOT_EXCLUDED
    return Verdict(s, min_norm, bound, label, status)


def five_q_model(q: int, lower_bounds: Sequence[int] = (0,) * 6) -> NormModel:
    """Norm model of (-2,5,q), q >= 11, with the given lower bounds and no parity rule."""
    knot = KnotSpec(5, q)
    table = boundary_slopes(knot)
    return NormModel(knot, table.slopes, tuple(lower_bounds), (False,) * 6,
                     minimal_norm(knot) // 2)


@dataclass(frozen=True)
class NormShiftCheck:
    """Both sides of the two shift identities relating 2q+11 and 2q+13 to 2q+10.

    S is the norm of 1/0 under a.  second_rhs is 3S - 4a6;
    second_rhs_expanded is 3S - 8a6, obtained by expanding both norms termwise.
    """

    q: int
    S: int
    total_ok: bool
    first_lhs: int
    first_rhs: int
    second_lhs: int
    second_rhs: int
    second_rhs_expanded: int


def norm_shift_identity(q: int, a: Sequence[int]) -> NormShiftCheck:
    if q < 11 or q % 2 == 0:
        raise ValueError("q must be odd and at least 11")
    model = five_q_model(q)
    if len(a) != 6 or any(x < 0 for x in a):
        raise ValueError("a must be six non-negative integers")
    S = norm_value(model, a, MERIDIAN)
    n10 = norm_value(model, a, Slope(2 * q + 10, 1))
    n11 = norm_value(model, a, Slope(2 * q + 11, 1))
    n13 = norm_value(model, a, Slope(2 * q + 13, 1))
    a6 = a[5]
    return NormShiftCheck(q, S, S == minimal_norm(model.knot), n11 - n10, S - 4 * a6,
                          n13 - n10, 3 * S - 4 * a6, 3 * S - 8 * a6)


@dataclass(frozen=True)
class ShiftExclusion:
    q: int
    S: int
    zero_case: str
    verdicts: tuple
    strong_bound_13: int


def shift_exclusion(q: int) -> ShiftExclusion:
    """Exclude 2q+11 and 2q+13 for (-2,5,q), q >= 11, by the two-case norm argument.

    If a_1 = ... = a_4 = 0 the norm of 2q+11 equals S, which would force a
    non-integral boundary slope within distance one of 2q+11; there is none.  Otherwise the
    norm of 2q+10 is at least 2(2q-5) + 4a_6, giving
      ||2q+11|| >= S + 2(2q-5)           (first identity)
      ||2q+13|| >= 3S + 2(2q-5) - 4a_6 >= S + 2(2q-5) + 4   (since a_6 <= S/2 - 1).
    """
    if q < 11 or q % 2 == 0:
        raise ValueError("q must be odd and at least 11")
    S = minimal_norm(KnotSpec(5, q))
    zero = (f"a1=a2=a3=a4=0 gives ||{2 * q + 11}|| = 2(a5+a6) = S = {S}; "
            "a non-integral boundary slope within distance one of it forbids this")
    b11 = S + 2 * (2 * q - 5)
    b13 = S + 2 * (2 * q - 5) + 4
    out = []
    for s, b in ((Slope(2 * q + 11, 1), b11), (Slope(2 * q + 13, 1), b13)):
        bound = S + 8
        out.append(Verdict(s, b, bound, "S+8", EXCLUDED if b > bound else NOT_EXCLUDED))
    return ShiftExclusion(q, S, zero, tuple(out), 3 * S + 2 * (2 * q - 5))
