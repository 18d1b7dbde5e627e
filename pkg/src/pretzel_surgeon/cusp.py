"""Slope lengths on Euclidean cusp cross-sections and exceptional-slope candidates.

Translations are stored exactly as sqrt(scale2) * (a + b*sqrt(3)*i) with rational
a, b and scale2, so squared lengths are rational and the 6-theorem bound is
decided by comparing length^2 with 36 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, sqrt

from . import data
from .slopes import BoundarySlopeTable, KnotSpec, MERIDIAN, Slope, distance

SIX = 6


@dataclass(frozen=True)
class CuspLattice:
    name: str
    meridian: tuple  # (a, b) for a + b*sqrt(3)*i
    second: tuple
    second_label: Slope
    scale2: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "meridian", tuple(Fraction(x) for x in self.meridian))
        object.__setattr__(self, "second", tuple(Fraction(x) for x in self.second))
        object.__setattr__(self, "scale2", Fraction(self.scale2))
        if self.scale2 <= 0:
            raise ValueError("scale2 must be positive")
        (a1, b1), (a2, b2) = self.meridian, self.second
        if a1 * b2 - a2 * b1 == 0:
            raise ValueError("translations are linearly dependent")

    def _vec(self, ab) -> complex:
        a, b = ab
        return sqrt(self.scale2) * complex(float(a), float(b) * sqrt(3))

    @property
    def meridian_translation(self) -> complex:
        return self._vec(self.meridian)

    @property
    def second_translation(self) -> complex:
        return self._vec(self.second)

    def scaled(self, c2) -> "CuspLattice":
        """The lattice scaled by sqrt(c2)."""
        return CuspLattice(self.name, self.meridian, self.second, self.second_label,
                           self.scale2 * Fraction(c2))

    def gram(self) -> tuple:
        """(A, B, C) with length^2 = A n^2 + 2B mn + C m^2."""
        (a1, b1), (a2, b2) = self.meridian, self.second
        s = self.scale2
        return (s * (a1 * a1 + 3 * b1 * b1), s * (a1 * a2 + 3 * b1 * b2),
                s * (a2 * a2 + 3 * b2 * b2))

    def length_squared(self, m: int, n: int) -> Fraction:
        A, B, C = self.gram()
        return A * n * n + 2 * B * m * n + C * m * m

    def slope_of(self, m: int, n: int) -> Slope:
        """Slope realized by n meridians plus m copies of the second translation."""
        lab = self.second_label
        return Slope(n + m * lab.num, m * lab.den)

    def to_json(self) -> dict:
        def enc(x):
            return x.numerator if x.denominator == 1 else str(x)
        return {"name": self.name, "meridian": [enc(x) for x in self.meridian],
                "second": [enc(x) for x in self.second],
                "second_label": self.second_label.to_json(), "scale2": str(self.scale2)}

    @classmethod
    def from_json(cls, obj: dict) -> "CuspLattice":
        return cls(obj["name"], tuple(obj["meridian"]), tuple(obj["second"]),
                   Slope.of(obj["second_label"]), Fraction(obj.get("scale2", "1")))


@lru_cache(maxsize=None)
def _bundled() -> dict:
    return {e["name"]: CuspLattice.from_json(e)
            for e in data.load_json("cusp_lattices.json")["lattices"]}


def lattice(name: str) -> CuspLattice:
    return _bundled()[name]


def _check_primitive(m: int, n: int):
    if (m, n) == (0, 0) or gcd(m, n) != 1:
        raise ValueError(f"({m}, {n}) is not a primitive lattice vector")


def slope_length(lat: CuspLattice, m: int, n: int) -> float:
    _check_primitive(m, n)
    return sqrt(lat.length_squared(m, n))


def _normal_pair(m: int, n: int) -> tuple:
    return (m, n) if (m > 0 or (m == 0 and n > 0)) else (-m, -n)


def search_radius(lat: CuspLattice, bound) -> tuple:
    """Bounds (M, N) with |m| <= M, |n| <= N for every vector of length <= bound."""
    A, B, C = lat.gram()
    det = A * C - B * B
    b2 = Fraction(bound) ** 2
    return isqrt(int(b2 * A / det)), isqrt(int(b2 * C / det))


def short_slopes(lat: CuspLattice, bound=SIX) -> set:
    """Primitive (m, n), up to sign, with slope length <= bound."""
    b2 = Fraction(bound) ** 2
    M, N = search_radius(lat, bound)
    out = set()
    for m in range(0, M + 1):
        for n in range(-N, N + 1):
            if (m, n) == (0, 0) or gcd(m, n) != 1:
                continue
            if lat.length_squared(m, n) <= b2:
                out.add(_normal_pair(m, n))
    return out


def twist_length_squared(lat: CuspLattice, k: int) -> Fraction:
    """Squared length of the slope -1/k on a twisting-circle cusp."""
    return lat.length_squared(k, -1)


def short_twists(lat: CuspLattice, bound=SIX, kmax: int = 100) -> set:
    b2 = Fraction(bound) ** 2
    return {k for k in range(1, kmax + 1) if twist_length_squared(lat, k) <= b2}


@dataclass
class CandidateSet:
    knot: KnotSpec
    slopes: tuple
    provenance: dict = field(default_factory=dict)

    def __contains__(self, s) -> bool:
        return Slope.of(s) in self.slopes

    def __iter__(self):
        return iter(self.slopes)

    def __len__(self) -> int:
        return len(self.slopes)


def _cusp_setup(knot: KnotSpec) -> tuple:
    """Knot-cusp lattice and the two twisting-circle lattices used for the 6-theorem."""
    k, l = (knot.p - 1) // 2, (knot.q - 1) // 2
    if knot.p >= 7:
        return lattice("knot"), (lattice("trivial"), k), (lattice("trivial"), l)
    if knot.p == 5 and knot.q >= 11:
        return (lattice("knot_rescaled"), (lattice("trivial_expanded"), k),
                (lattice("trivial_rescaled"), l))
    raise ValueError(f"6-theorem enumeration needs p >= 7 or (p = 5, q >= 11), got {knot}")


def exceptional_candidates_6thm(knot: KnotSpec) -> CandidateSet:
    """Integral slopes of the knot that are too short for the 6-theorem to rule out."""
    knot_lat, *twists = _cusp_setup(knot)
    notes = []
    for lat, k in twists:
        L2 = twist_length_squared(lat, k)
        if L2 <= 36:
            raise ValueError(f"twist slope -1/{k} on {lat.name} has length^2 {L2} <= 36")
        notes.append(f"-1/{k} on {lat.name} cusp: length^2 {L2} > 36")
    k, l = (knot.p - 1) // 2, (knot.q - 1) // 2
    lab = knot_lat.second_label
    shifted = CuspLattice(knot_lat.name, knot_lat.meridian, knot_lat.second,
                          Slope(lab.num + 4 * (k + l) * lab.den, lab.den), knot_lat.scale2)
    if shifted.second_label != Slope(knot.toroidal, 1):
        raise AssertionError("relabelled second translation must be the toroidal slope")
    slopes, prov = [], {}
    for m, n in sorted(short_slopes(shifted)):
        s = shifted.slope_of(m, n)
        if s == MERIDIAN:
            continue
        slopes.append(s)
        prov[s] = notes + [f"(m,n)=({m},{n}) on {shifted.name} cusp: "
                           f"length^2 {shifted.length_squared(m, n)} <= 36"]
    slopes.sort(key=float)
    return CandidateSet(knot, tuple(slopes), prov)


def candidate_finite_slopes(knot: KnotSpec, table: BoundarySlopeTable,
                            detected_count: int) -> CandidateSet:
    """Slopes surviving the distance-10, half-integrality, proximity and boundary filters."""
    if not table.complete:
        raise ValueError(f"boundary-slope table for {knot} is partial")
    strict = detected_count > 2
    T = Slope(knot.toroidal, 1)
    out, prov = [], {}
    for b in (1, 2):
        for a in range(b * T.num - 10, b * T.num + 11):
            if gcd(a, b) != 1:
                continue
            s = Slope(a, b)
            if s in table:
                continue
            near = []
            for r in table.strict:
                gap = abs(s.fraction() - r.fraction())
                lim = Fraction(2, b)
                if gap < lim or (not strict and gap == lim):
                    near.append(r)
            if not near:
                continue
            out.append(s)
            prov[s] = [f"distance {distance(s, T)} <= 10 from {T}",
                       "denominator " + str(b),
                       "within 2/" + str(b) + " of strict boundary slope "
                       + ", ".join(str(r) for r in near)]
    out.sort(key=float)
    return CandidateSet(knot, tuple(out), prov)
