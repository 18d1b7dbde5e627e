import pytest
from hypothesis import given, strategies as st

from pretzel_surgeon.words import Word, WordSyntaxError, cyclic_reduce, free_reduce, parse_word

NAMES = ("x", "y", "z")
letters = st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=20)
words = letters.map(Word)


def test_parse_examples():
    w = parse_word("x^2 (yZ)^-1 y", NAMES)
    assert w == Word(((0, 1), (0, 1), (2, 1), (1, -1), (1, 1)))
    assert parse_word("", NAMES) == Word(())
    assert parse_word("xX", NAMES) == Word(())
    assert parse_word("(xy)^0", NAMES) == Word(())


@pytest.mark.parametrize("text", ["w", "x^", "(xy", "xy)", "x^a", "^2"])
def test_parse_errors(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text, NAMES)


@given(letters)
def test_free_reduce_idempotent_and_reduced(ls):
    r = free_reduce(ls)
    assert free_reduce(r) == r
    assert all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(r, r[1:]))


@given(words, words, words)
def test_group_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == Word(())
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(words, st.integers(-4, 4))
def test_power_and_exponent_sums(w, n):
    assert (w ** n).exponent_sums(3) == tuple(n * e for e in w.exponent_sums(3))


@given(words)
def test_cyclic_reduction_is_conjugate(w):
    c = w.cyclically_reduced()
    assert c.is_cyclically_reduced()
    assert c.exponent_sums(3) == w.exponent_sums(3)
    assert len(cyclic_reduce(c.letters)) == len(c)


@given(words)
def test_format_parse_roundtrip(w):
    assert parse_word(w.format(NAMES), NAMES) == w
    assert Word.from_json(w.to_json()) == w


@given(words, st.lists(words, min_size=3, max_size=3))
def test_substitution_is_homomorphism(w, images):
    half = len(w.letters) // 2
    a, b = Word(w.letters[:half]), Word(w.letters[half:])
    assert w.substitute(images) == a.substitute(images) * b.substitute(images)


def test_format_uses_case_swap_and_powers():
    w = parse_word("y^-2 x y x", NAMES)
    assert w.format(("a", "b", "c")) == "B^2aba"
    assert Word(()).format(NAMES) == "1"
