import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pretzel_surgeon.slopes import (MERIDIAN, BoundarySlopeTable, KnotSpec, Slope,
                                    boundary_slopes, distance, format_slopes, is_boundary_slope,
                                    load_tables)
from pretzel_surgeon import data

from strategies import knots, slopes


def test_parse_and_normalize():
    assert Slope.parse("31/2") == Slope(31, 2)
    assert Slope(-4, -2) == Slope(2, 1)
    assert Slope(-1, 0) == MERIDIAN
    assert str(Slope(62, 4)) == "31/2"
    with pytest.raises(ValueError):
        Slope(0, 0)


def test_distance_examples():
    assert distance(MERIDIAN, Slope(14, 1)) == 1
    assert distance(Slope(16, 1), Slope(37, 2)) == 5
    assert distance(Slope(21, 1), Slope(67, 3)) == 4


@given(slopes(), slopes())
def test_distance_symmetric_and_zero_on_diagonal(a, b):
    assert distance(a, b) == distance(b, a)
    assert distance(a, a) == 0
    assert (distance(a, b) == 0) == (a == b)


@given(slopes(allow_meridian=False), st.integers(-5, 5))
def test_distance_invariant_under_integer_shift(s, k):
    t = Slope(s.num + k * s.den, s.den)
    r = Slope(7, 3)
    r2 = Slope(r.num + k * r.den, r.den)
    assert distance(s, r) == distance(t, r2)


@given(slopes(allow_meridian=False))
def test_from_fraction_roundtrip(s):
    assert Slope.of(s.fraction()) == s
    assert Slope.of(str(s)) == s
    assert Slope.of(s.to_json()) == s


@pytest.mark.parametrize("p,q", [(4, 5), (5, 6), (3, 5), (7, 5)])
def test_knot_validation(p, q):
    with pytest.raises(ValueError):
        KnotSpec(p, q)


@given(knots())
def test_minimal_norm_formula(knot):
    assert knot.minimal_norm == 2 * knot.p * knot.q - 3 * (knot.p + knot.q)
    assert knot.minimal_norm >= 20


def test_bundled_tables():
    t = boundary_slopes(KnotSpec(5, 5))
    assert format_slopes(t.slopes) == "{0, 14, 15, 20, 22}"
    assert t.complete
    assert Slope(0, 1) not in t.strict
    assert Slope(37, 2) in boundary_slopes(KnotSpec(5, 7))
    assert Slope(67, 3) in boundary_slopes(KnotSpec(5, 9))


@given(st.integers(5, 40).map(lambda n: 2 * n + 1))
def test_five_family(q):
    t = boundary_slopes(KnotSpec(5, q))
    assert t.complete
    mid = Slope(q * q - q - 5, (q - 3) // 2)
    assert mid in t
    assert Slope(2 * q + 10, 1) in t and Slope(2 * q + 12, 1) in t


def test_partial_table_unknown_answers():
    knot = KnotSpec(7, 9)
    t = boundary_slopes(knot)
    assert not t.complete
    assert is_boundary_slope(knot, Slope(32, 1)) is True
    assert is_boundary_slope(knot, Slope(33, 1)) is None
    assert is_boundary_slope(KnotSpec(5, 5), Slope(16, 1)) is False


def test_table_requires_toroidal_slope():
    with pytest.raises(ValueError):
        BoundarySlopeTable(KnotSpec(5, 5), (Slope(0, 1), Slope(14, 1)), True)
    with pytest.raises(ValueError):
        BoundarySlopeTable(KnotSpec(5, 5), (Slope(20, 1), Slope(20, 1)), True)


def test_table_file_roundtrip(tmp_path):
    raw = data.load_json("boundary_slopes.json")
    assert raw["version"] == 1
    tables = load_tables(data.data_path("boundary_slopes.json"))
    out = {"version": 1, "tables": [t.to_json() for t in tables.values()]}
    path = tmp_path / "t.json"
    path.write_text(json.dumps(out))
    assert load_tables(path) == tables


def test_fraction_of_meridian_rejected():
    with pytest.raises(ValueError):
        MERIDIAN.fraction()
    assert float(MERIDIAN) == float("inf")
    assert Fraction(31, 2) == Slope(31, 2).fraction()
