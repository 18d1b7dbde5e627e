"""Rational slopes on a knot's boundary torus and boundary-slope tables.

A slope a/b is stored reduced with b >= 0; the meridian is 1/0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional

from . import data


@dataclass(frozen=True)
class Slope:
    num: int
    den: int

    def __post_init__(self):
        a, b = int(self.num), int(self.den)
        if a == 0 and b == 0:
            raise ValueError("0/0 is not a slope")
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        g = gcd(a, b)
        object.__setattr__(self, "num", a // g)
        object.__setattr__(self, "den", b // g)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        text = text.strip()
        if "/" in text:
            a, b = text.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(text), 1)

    @classmethod
    def of(cls, value) -> "Slope":
        if isinstance(value, Slope):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (tuple, list)):
            return cls(int(value[0]), int(value[1]))
        f = Fraction(value)
        return cls(f.numerator, f.denominator)

    @property
    def is_meridian(self) -> bool:
        return self.den == 0

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    @property
    def is_even_integer(self) -> bool:
        return self.den == 1 and self.num % 2 == 0

    def fraction(self) -> Fraction:
        if self.den == 0:
            raise ValueError("the meridian has no finite value")
        return Fraction(self.num, self.den)

    def __float__(self) -> float:
        return float("inf") if self.den == 0 else self.num / self.den

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"

    def to_json(self) -> list:
        return [self.num, self.den]


MERIDIAN = Slope(1, 0)


def distance(s1: Slope, s2: Slope) -> int:
    """Geometric intersection number |ad - bc| of a/b and c/d."""
    return abs(s1.num * s2.den - s1.den * s2.num)


@dataclass(frozen=True)
class KnotSpec:
    """The (-2, p, q) pretzel knot, p and q odd with 5 <= p <= q."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if not (isinstance(p, int) and isinstance(q, int)):
            raise ValueError("p and q must be integers")
        if p % 2 == 0 or q % 2 == 0:
            raise ValueError(f"p and q must be odd, got ({p}, {q})")
        if not 5 <= p <= q:
            raise ValueError(f"need 5 <= p <= q, got ({p}, {q})")

    @property
    def toroidal(self) -> int:
        return 2 * (self.p + self.q)

    @property
    def minimal_norm(self) -> int:
        return 2 * self.p * self.q - 3 * (self.p + self.q)

    def __str__(self) -> str:
        return f"(-2,{self.p},{self.q})"


@dataclass(frozen=True)
class BoundarySlopeTable:
    knot: KnotSpec
    slopes: tuple
    complete: bool

    def __post_init__(self):
        slopes = tuple(Slope.of(s) for s in self.slopes)
        if len(set(slopes)) != len(slopes):
            raise ValueError("boundary slopes must be distinct")
        if Slope(self.knot.toroidal, 1) not in slopes:
            raise ValueError("the toroidal slope 2(p+q) must be present")
        object.__setattr__(self, "slopes", slopes)

    def __contains__(self, s) -> bool:
        return Slope.of(s) in self.slopes

    @property
    def strict(self) -> tuple:
        """Strict boundary slopes; only the slope 0 can fail to be strict."""
        return tuple(s for s in self.slopes if s.num != 0)

    def to_json(self) -> dict:
        return {
            "knot": [self.knot.p, self.knot.q],
            "slopes": [s.to_json() for s in self.slopes],
            "complete": self.complete,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BoundarySlopeTable":
        p, q = obj["knot"]
        return cls(KnotSpec(int(p), int(q)), tuple(Slope.of(s) for s in obj["slopes"]),
                   bool(obj["complete"]))


def _five_family(q: int) -> tuple:
    """Boundary slopes of (-2,5,q): 0, 14, 15, (q^2-q-5)/((q-3)/2), 2q+10, 2q+12."""
    mid = Slope(q * q - q - 5, (q - 3) // 2)
    out = []
    for s in (Slope(0, 1), Slope(14, 1), Slope(15, 1), mid,
              Slope(2 * q + 10, 1), Slope(2 * q + 12, 1)):
        if s not in out:
            out.append(s)
    return tuple(sorted(out, key=float))


@lru_cache(maxsize=None)
def _bundled_tables() -> dict:
    return load_tables(data.data_path("boundary_slopes.json"))


def load_tables(path) -> dict:
    with open(path) as fh:
        obj = json.load(fh)
    tables = {}
    for entry in obj["tables"]:
        t = BoundarySlopeTable.from_json(entry)
        tables[(t.knot.p, t.knot.q)] = t
    return tables


def boundary_slopes(knot: KnotSpec, tables: Optional[dict] = None) -> BoundarySlopeTable:
    if tables is None:
        tables = _bundled_tables()
    key = (knot.p, knot.q)
    if key in tables:
        return tables[key]
    if knot.p == 5:
        return BoundarySlopeTable(knot, _five_family(knot.q), True)
    t = knot.toroidal
    return BoundarySlopeTable(knot, (Slope(t, 1), Slope(t + 2, 1)), False)


def is_boundary_slope(knot: KnotSpec, s: Slope, tables: Optional[dict] = None) -> Optional[bool]:
    """True or False when decidable; None when the table is partial and s is absent."""
    table = boundary_slopes(knot, tables)
    if s in table:
        return True
    return False if table.complete else None


def format_slopes(slopes: Iterable[Slope]) -> str:
    return "{" + ", ".join(str(s) for s in sorted(slopes, key=float)) + "}"
