
import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from pretzel_surgeon import presentations as pr
from pretzel_surgeon.slopes import Slope
from strategies import knots

matrices = st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=1, max_size=5))


def oracle_invariants(rows):
    M = sympy.Matrix(rows)
    S = sympy_snf(M, domain=sympy.ZZ)
    return sorted(abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0)


@given(matrices)
def test_snf_matches_sympy(rows):
    diag, V = pr.smith_normal_form(rows, len(rows[0]))
    assert sorted(d for d in diag if d) == oracle_invariants(rows)
    assert all(a % b == 0 for a, b in zip(diag[1:], diag) if b)
    assert abs(sympy.Matrix(V).det()) == 1


@given(matrices)
def test_rows_lie_in_their_relation_lattice(rows):
    n = len(rows[0])
    gens = tuple("abcd"[:n])
    pres = pr.Presentation(gens, tuple(_word(r, gens) for r in rows))
    for r in rows:
        assert pr.in_relation_lattice(pres, r)
        assert pr.in_relation_lattice(pres, [2 * x for x in r])


def _word(row, gens):
    return "".join(f"{g}^{e}" for g, e in zip(gens, row) if e) or "1"


def test_relation_lattice_rejects_outside_vector():
    pres = pr.Presentation(("a", "b"), ("a^4", "b^6"))
    assert pr.in_relation_lattice(pres, [8, -6])
    assert not pr.in_relation_lattice(pres, [2, 0])
    assert not pr.in_relation_lattice(pr.Presentation(("a",), ()), [1])


def test_pretzel_group_abelianizes_to_integers():
    for p, q in ((5, 5), (5, 7), (7, 9)):
        assert pr.abelianization(pr.pretzel_presentation(p, q)) == pr.Abelianization(1, ())


@given(knots(max_q=21))
def test_longitude_is_null_homologous(knot):
    lw = pr.longitude_word(knot.p, knot.q)
    # every Wirtinger generator maps to the meridian class
    assert sum(lw.exponent_sums(3)) == 0
    # leading block is the framing correction x^(-2(p+q))
    assert lw.letters[:2 * (knot.p + knot.q)] == ((0, -1),) * (2 * (knot.p + knot.q))


@given(knots(max_q=15), st.integers(-60, 60))
def test_surgered_abelianization_is_cyclic_of_order_s(knot, s):
    ab = pr.abelianization(pr.surgered_presentation(knot.p, knot.q, s))
    if s == 0:
        assert ab == pr.Abelianization(1, ())
    elif abs(s) == 1:
        assert ab == pr.Abelianization(0, ())
    else:
        assert ab == pr.Abelianization(0, (abs(s),))


def test_surgered_examples():
    assert str(pr.abelianization(pr.surgered_presentation(5, 5, 16))) == "Z/16"
    assert str(pr.abelianization(pr.surgered_presentation(5, 7, 18))) == "Z/18"
    assert str(pr.abelianization(pr.surgered_presentation(5, 9, 22))) == "Z/22"
    with pytest.raises(ValueError):
        pr.surgered_presentation(5, 5, Slope(31, 2))


def test_coxeter_families():
    assert str(pr.abelianization(pr.coxeter_2pq2(5, 11))) == "0"
    with pytest.raises(ValueError):
        pr.coxeter_Gmpq(4, 5, 7)
    g = pr.coxeter_Gmpq(5, 5, 7)
    assert g.involutions() == frozenset()
    assert pr.c5_presentation(5, 7).n_generators == 3


def test_presentation_validation_and_json():
    with pytest.raises(ValueError):
        pr.Presentation(("a", "a"), ())
    p = pr.pretzel_presentation(5, 7)
    assert pr.Presentation.from_json(p.to_json()) == p
    assert str(p).startswith("<x, y, z |")
    assert pr.Presentation(("a", "b"), ("a^2", "abAB")).involutions() == frozenset({0})


def test_pretzel_relations_have_three_pairs():
    rels = pr.pretzel_relations(5, 7)
    assert len(rels) == 3
    with pytest.raises(ValueError):
        pr.pretzel_relations(4, 7)
