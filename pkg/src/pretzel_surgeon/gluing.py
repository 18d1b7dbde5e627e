"""Gluing-equation data of an ideal triangulation.

Each row gives, for every tetrahedron k, the exponents (e, e', e'') of the shape
parameters z_k, z'_k = 1/(1 - z_k) and z''_k = 1 - 1/z_k.  Internally a row is
converted to exponents (r', r'') of z_k and 1 - z_k plus a sign:

    z^e z'^e' z''^e'' = (-1)^e'' z^(e - e'') (1 - z)^(e'' - e').
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache

from . import data


def _row(raw, n):
    row = tuple(tuple(int(x) for x in triple) for triple in raw)
    if len(row) != n or any(len(t) != 3 for t in row):
        raise ValueError(f"each row needs {n} exponent triples")
    return row


@dataclass(frozen=True)
class LogRow:
    zexp: tuple   # r'
    wexp: tuple   # r'' (exponents of 1 - z)
    sign: int


def to_log_form(row) -> LogRow:
    zexp = tuple(e - e2 for e, e1, e2 in row)
    wexp = tuple(e2 - e1 for e, e1, e2 in row)
    sign = -1 if sum(e2 for _, _, e2 in row) % 2 else 1
    return LogRow(zexp, wexp, sign)


@dataclass(frozen=True)
class GluingSystem:
    n: int
    equations: tuple
    meridian: tuple
    longitude: tuple
    name: str = ""

    def __post_init__(self):
        n = self.n
        object.__setattr__(self, "equations", tuple(_row(r, n) for r in self.equations))
        object.__setattr__(self, "meridian", _row(self.meridian, n))
        object.__setattr__(self, "longitude", _row(self.longitude, n))
        if len(self.equations) != n:
            raise ValueError(f"expected {n} gluing equations, got {len(self.equations)}")

    @classmethod
    def from_json(cls, obj: dict) -> "GluingSystem":
        return cls(int(obj["n"]), obj["equations"], obj["meridian"], obj["longitude"],
                   obj.get("name", ""))

    @classmethod
    def load(cls, path) -> "GluingSystem":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n,
                "equations": [[list(t) for t in r] for r in self.equations],
                "meridian": [list(t) for t in self.meridian],
                "longitude": [list(t) for t in self.longitude]}

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def exponent_sum(self) -> tuple:
        return tuple(tuple(sum(r[k][i] for r in self.equations) for i in range(3))
                     for k in range(self.n))

    def product_is_trivial(self) -> bool:
        """The product of all rows is 1 identically: every triple is (c, c, c) with c even."""
        return all(a == b == c and a % 2 == 0 for a, b, c in self.exponent_sum())

    def log_rows(self, drop: int = -1) -> list:
        """Log-form rows with one equation dropped (the last by default)."""
        drop %= self.n
        return [to_log_form(r) for j, r in enumerate(self.equations) if j != drop]

    def with_longitude(self, word) -> "GluingSystem":
        return GluingSystem(self.n, self.equations, self.meridian, word, self.name)


@lru_cache(maxsize=None)
def pretzel_255() -> GluingSystem:
    return GluingSystem.load(data.data_path("pretzel_255_gluing.json"))
