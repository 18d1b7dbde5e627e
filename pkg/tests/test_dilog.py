import cmath

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from pretzel_surgeon.dilog import bloch_wigner, bloch_wigner_volume, li2_near_zero


def oracle(z):
    z = mpmath.mpc(z)
    return float(mpmath.im(mpmath.polylog(2, z)) + mpmath.arg(1 - z) * mpmath.log(abs(z)))


shapes = st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False).filter(
    lambda z: abs(z) > 1e-3 and abs(1 - z) > 1e-3 and abs(z.imag) > 1e-6)


def test_regular_shape():
    assert bloch_wigner(cmath.exp(1j * cmath.pi / 3)) == pytest.approx(1.0149416064096535, abs=1e-12)
    assert abs(bloch_wigner(cmath.exp(1j * cmath.pi / 3)) - 1.0149416) < 1e-7


@given(shapes)
def test_matches_mpmath(z):
    assert bloch_wigner(z) == pytest.approx(oracle(z), abs=1e-10)


@given(shapes)
def test_six_fold_symmetry(z):
    d = bloch_wigner(z)
    for w, s in ((1 - 1 / z, 1), (1 / (1 - z), 1), (1 / z, -1), (1 - z, -1), (z / (z - 1), -1),
                 (z.conjugate(), -1)):
        assert bloch_wigner(w) == pytest.approx(s * d, abs=1e-10)


@given(shapes)
def test_bounded_by_regular_value(z):
    assert abs(bloch_wigner(z)) <= 1.0149416064096536


@given(st.floats(-20, 20))
def test_real_axis_vanishes(x):
    assume(x not in (0.0, 1.0))
    assert bloch_wigner(x) == 0.0


def test_singular_points_raise():
    for z in (0, 1, complex("inf")):
        with pytest.raises(ValueError):
            bloch_wigner(z)


def test_series_matches_polylog():
    for z in (0.3 + 0.2j, -0.7 + 0.5j, 0.1 - 0.9j):
        assert abs(li2_near_zero(z) - complex(mpmath.polylog(2, z))) < 1e-13


def test_volume_skips_degenerate():
    w = cmath.exp(1j * cmath.pi / 3)
    assert bloch_wigner_volume([w, None, w]) == pytest.approx(2 * bloch_wigner(w))
