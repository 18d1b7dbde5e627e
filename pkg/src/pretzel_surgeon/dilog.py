"""The Bloch-Wigner dilogarithm and volumes of ideal tetrahedra.

D(z) = Im Li2(z) + arg(1 - z) log|z| is the volume of the ideal tetrahedron with
shape z (signed by orientation).  Li2 is summed from its Bernoulli series in
u = -log(1 - z) after moving z into |z| <= 1, Re z <= 1/2 with the six-fold symmetry

    D(z) = D(1 - 1/z) = D(1/(1 - z)) = -D(1/z) = -D(1 - z) = -D(z/(z - 1)).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def _bernoulli(nmax: int = 60) -> tuple:
    B = [Fraction(1)]
    for m in range(1, nmax + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return tuple(float(b) for b in B)


@lru_cache(maxsize=None)
def _coeffs(nmax: int = 60) -> tuple:
    B = _bernoulli(nmax)
    return tuple(B[n] / math.factorial(n + 1) for n in range(nmax + 1))


def li2_near_zero(z: complex) -> complex:
    """Li2(z) for |z| <= 1, Re z <= 1/2, via sum B_n u^(n+1)/(n+1)! with u = -log(1 - z)."""
    u = -cmath.log(1 - z)
    total, upow = 0j, u
    for n, c in enumerate(_coeffs()):
        if n > 1 and n % 2 == 1:
            upow *= u
            continue
        term = c * upow
        total += term
        if n > 4 and abs(term) < 1e-18 * max(1.0, abs(total)):
            break
        upow *= u
    return total


def _d_direct(w: complex) -> float:
    return li2_near_zero(w).imag + cmath.phase(1 - w) * math.log(abs(w))


def bloch_wigner(z) -> float:
    z = complex(z)
    if not (cmath.isfinite(z)) or z == 0 or z == 1:
        raise ValueError(f"shape {z} is a singular point of the Bloch-Wigner function")
    if z.imag == 0:
        return 0.0
    images = ((z, 1), (1 - 1 / z, 1), (1 / (1 - z), 1), (1 / z, -1), (1 - z, -1),
              (z / (z - 1), -1))
    for w, sign in images:
        if abs(w) <= 1 and w.real <= 0.5:
            return sign * _d_direct(w)
    w, sign = min(images, key=lambda ws: abs(ws[0]))
    return sign * _d_direct(w)


def bloch_wigner_volume(shapes) -> float:
    """Sum of D over shapes; None marks a degenerate tetrahedron contributing 0."""
    return sum(0.0 if z is None else bloch_wigner(z) for z in shapes)
