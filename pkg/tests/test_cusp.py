from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pretzel_surgeon.cusp import (CuspLattice, candidate_finite_slopes,
                                  exceptional_candidates_6thm, lattice, search_radius,
                                  short_slopes, short_twists, slope_length,
                                  twist_length_squared)
from pretzel_surgeon.slopes import KnotSpec, Slope, boundary_slopes, format_slopes


def test_knot_cusp_short_slopes():
    assert short_slopes(lattice("knot")) == {(0, 1), (1, -1), (1, 0), (1, 1), (1, 2)}


def test_rescaled_knot_cusp_has_seven():
    assert len(short_slopes(lattice("knot_rescaled"))) == 7


def test_trivial_cusp_twists():
    assert short_twists(lattice("trivial")) == {1, 2}
    assert twist_length_squared(lattice("trivial"), 3) == 39


def test_rescaled_twist_lengths():
    assert twist_length_squared(lattice("trivial_rescaled"), 2) == Fraction(19, 2)
    assert short_twists(lattice("trivial_rescaled")) == {1, 2, 3, 4}
    assert 5 not in short_twists(lattice("trivial_rescaled"))


def test_slope_length_rejects_non_primitive():
    with pytest.raises(ValueError):
        slope_length(lattice("knot"), 2, 4)
    with pytest.raises(ValueError):
        slope_length(lattice("knot"), 0, 0)


def test_meridian_length_two():
    assert slope_length(lattice("knot"), 0, 1) == pytest.approx(2.0)


def _brute(lat, bound, box=40):
    from math import gcd
    out = set()
    for m in range(0, box + 1):
        for n in range(-box, box + 1):
            if (m, n) == (0, 0) or gcd(m, n) != 1:
                continue
            if m == 0 and n < 0:
                continue
            if lat.length_squared(m, n) <= bound * bound:
                out.add((m, n))
    return out


@pytest.mark.parametrize("name", ["knot", "knot_rescaled", "trivial", "trivial_rescaled",
                                  "trivial_expanded"])
def test_short_slopes_match_box_search(name):
    lat = lattice(name)
    assert short_slopes(lat) == _brute(lat, 6)


@given(st.sampled_from(["knot", "knot_rescaled", "trivial"]),
       st.integers(-30, 30), st.integers(-30, 30))
def test_search_radius_is_sound(name, m, n):
    lat = lattice(name)
    M, N = search_radius(lat, 6)
    if lat.length_squared(m, n) <= 36:
        assert abs(m) <= M and abs(n) <= N


@given(st.integers(-20, 20), st.integers(-20, 20), st.sampled_from([Fraction(1, 2), 2, 3]))
def test_scaling_multiplies_length_squared(m, n, c):
    lat = lattice("knot")
    assert lat.scaled(c).length_squared(m, n) == c * lat.length_squared(m, n)


def test_lattice_json_roundtrip():
    for name in ["knot", "trivial_rescaled"]:
        lat = lattice(name)
        assert CuspLattice.from_json(lat.to_json()) == lat


@pytest.mark.parametrize("p,q,expected", [
    (7, 9, "{31, 32, 33, 34}"),
    (11, 13, "{47, 48, 49, 50}"),
    (5, 11, "{30, 31, 32, 33, 34, 35}"),
    (5, 21, "{50, 51, 52, 53, 54, 55}"),
])
def test_six_theorem_candidates(p, q, expected):
    assert format_slopes(exceptional_candidates_6thm(KnotSpec(p, q)).slopes) == expected


def test_six_theorem_needs_large_enough_knot():
    with pytest.raises(ValueError):
        exceptional_candidates_6thm(KnotSpec(5, 9))


@pytest.mark.parametrize("p,q,count,expected", [
    (5, 5, 4, "{13, 31/2, 16, 19, 39/2, 41/2, 21, 43/2, 45/2, 23}"),
    (5, 7, 4, "{16, 17, 18, 19, 20, 23, 47/2, 49/2, 25, 51/2, 53/2, 27}"),
    (5, 9, 3, "{21, 22, 23, 24, 27, 55/2, 57/2, 29, 59/2, 61/2, 31}"),
])
def test_candidate_finite_slopes(p, q, count, expected):
    knot = KnotSpec(p, q)
    cands = candidate_finite_slopes(knot, boundary_slopes(knot), count)
    assert format_slopes(cands.slopes) == expected
    assert all(cands.provenance[s] for s in cands)


def test_non_strict_proximity_admits_more():
    knot = KnotSpec(5, 5)
    t = boundary_slopes(knot)
    loose = set(candidate_finite_slopes(knot, t, 2))
    tight = set(candidate_finite_slopes(knot, t, 4))
    assert tight < loose
    assert {Slope(17, 1), Slope(18, 1), Slope(24, 1)} <= loose - tight


@given(st.integers(2, 15).map(lambda n: 2 * n + 1))
def test_candidates_obey_filters(q):
    knot = KnotSpec(5, q)
    table = boundary_slopes(knot)
    T = Slope(knot.toroidal, 1)
    from pretzel_surgeon.slopes import distance
    for s in candidate_finite_slopes(knot, table, 3):
        assert s.den in (1, 2)
        assert distance(s, T) <= 10
        assert s not in table
        assert any(abs(s.fraction() - r.fraction()) < Fraction(2, s.den) for r in table.strict)
