"""Roots of the degree-16 end-game polynomial and their cross-ratio values.

With the fixed coordinates t1- = 0, t1+ = 1, t3+ = t2+ + 1 and t2+ = 1 + zeta, the
four-point cross ratio (t1+ - t2+)/(t1+ - t1-) / ((t3+ - t2+)/(t3+ - t1-)) becomes
(-zeta) / (1/(2 + zeta)) = -zeta(2 + zeta).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from . import data


EPS = 2.0 ** -52


class RootFindingError(RuntimeError):
    pass


class AmbiguousClustering(ValueError):
    pass


@dataclass(frozen=True)
class IntegerPolynomial:
    coefficients: tuple  # ascending degree

    def __post_init__(self):
        c = tuple(int(x) for x in self.coefficients)
        object.__setattr__(self, "coefficients", c)
        if not c or c[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __mul__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return IntegerPolynomial(tuple(out))

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def derivative_at(self, z: complex) -> complex:
        acc = 0j
        n = self.degree
        for k in range(n, 0, -1):
            acc = acc * z + k * self.coefficients[k]
        return acc

    def rounding_bound(self, z: complex) -> float:
        """Forward error bound for Horner evaluation at z, in units of machine epsilon."""
        r = abs(z)
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * r + abs(c)
        return acc

    def coefficient_norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.coefficients))

    def relative_residual(self, z: complex) -> float:
        """|p(z)| divided by the Euclidean norm of the coefficient vector."""
        return abs(self(z)) / self.coefficient_norm()

    def to_json(self) -> list:
        return list(self.coefficients)


@lru_cache(maxsize=None)
def bundled_factors() -> tuple:
    obj = data.load_json("ohtsuki_polynomial.json")
    return tuple(IntegerPolynomial(tuple(f)) for f in obj["factors"])


def bundled_polynomial() -> IntegerPolynomial:
    f1, f2 = bundled_factors()
    return f1 * f2


def _aberth(poly: IntegerPolynomial, max_iter: int, tol: float) -> list:
    n = poly.degree
    c = poly.coefficients
    # start on a circle of the Fujiwara radius, rotated off the real axis
    radius = 2 * max(abs(c[k] / c[-1]) ** (1 / (n - k)) for k in range(n))
    z = [radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]
    done = [False] * n
    for _ in range(max_iter):
        for i in range(n):
            if done[i]:
                continue
            p, dp = poly(z[i]), poly.derivative_at(z[i])
            if abs(p) <= 4 * EPS * poly.rounding_bound(z[i]):
                done[i] = True
                continue
            ratio = p / dp if dp != 0 else p
            s = sum(1 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
            step = ratio / (1 - ratio * s)
            z[i] -= step
            done[i] = abs(step) <= tol * max(1.0, abs(z[i]))
        if all(done):
            return z
    raise RootFindingError(f"simultaneous iteration did not converge in {max_iter} sweeps")


def _polish(poly: IntegerPolynomial, z: complex, sweeps: int = 5) -> complex:
    for _ in range(sweeps):
        dp = poly.derivative_at(z)
        if dp == 0:
            break
        pz = poly(z)
        w = z - pz / dp
        # near a multiple root the Newton step is rounding noise; keep only improvements
        if abs(poly(w)) >= abs(pz):
            break
        z = w
    return z


def roots(poly: IntegerPolynomial, tol: float = 1e-10, max_iter: int = 500) -> list:
    """All complex roots (with multiplicity) by Aberth iteration and Newton polishing."""
    if poly.degree < 1:
        raise ValueError("polynomial must have degree at least 1")
    if poly.degree == 1:
        a0, a1 = poly.coefficients
        return [complex(-a0 / a1)]
    z = [_polish(poly, x) for x in _aberth(poly, max_iter, 1e-12)]
    bad = [x for x in z if poly.relative_residual(x) >= tol]
    if bad:
        raise RootFindingError(f"{len(bad)} roots have residual above {tol}")
    return sorted(z, key=lambda x: (round(x.real, 9), round(x.imag, 9)))


def cross_ratio_value(zeta: complex) -> complex:
    if zeta == -2:
        raise ValueError("zeta = -2 makes t3+ coincide with t1-")
    return -zeta * (2 + zeta)


def cluster(values, tol: float) -> list:
    """Single-linkage clusters under |u - v| < tol, checking a 10x separation gap."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    vals = [complex(v) for v in values]
    if any(not (math.isfinite(v.real) and math.isfinite(v.imag)) for v in vals):
        raise ValueError("values must be finite")
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) < tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = list(groups.values())
    for a in range(len(out)):
        for b in range(a + 1, len(out)):
            gap = min(abs(vals[i] - vals[j]) for i in out[a] for j in out[b])
            if gap <= 10 * tol:
                raise AmbiguousClustering(f"clusters only {gap:.3g} apart at tolerance {tol}")
    return [[vals[i] for i in g] for g in out]


def count_distinct(values, tol: float = 1e-6) -> int:
    return len(cluster(values, tol))


@dataclass(frozen=True)
class OhtsukiReport:
    roots: tuple
    residuals: tuple
    cross_ratios: tuple
    distinct: int
    multiplicities: tuple

    def to_json(self) -> dict:
        def c(z):
            return [z.real, z.imag]
        return {"roots": [c(z) for z in self.roots], "residuals": list(self.residuals),
                "cross_ratios": [c(z) for z in self.cross_ratios],
                "distinct": self.distinct, "multiplicities": list(self.multiplicities)}


def ohtsuki_report(tol: float = 1e-6, root_tol: float = 1e-10) -> OhtsukiReport:
    poly = bundled_polynomial()
    zs = roots(poly, root_tol)
    cr = [cross_ratio_value(z) for z in zs]
    groups = cluster(cr, tol)
    return OhtsukiReport(tuple(zs), tuple(poly.relative_residual(z) for z in zs), tuple(cr),
                         len(groups), tuple(sorted(len(g) for g in groups)))
