"""Free-group words, the presentation DSL, and abelianization."""

import pytest
from hypothesis import given, settings, strategies as st

from bundlesec.words import (
    ParseError,
    Presentation,
    Word,
    abelianization,
    commutator,
    exponent_sum,
    parse_presentation,
    reduce_letters,
)

letters = st.lists(
    st.tuples(st.sampled_from("abc"), st.sampled_from((1, -1))), max_size=20)


@settings(max_examples=200, derandomize=True)
@given(letters)
def test_reduction_is_idempotent_and_reduced(ls):
    reduced = reduce_letters(ls)
    assert reduce_letters(reduced) == reduced
    for (g1, s1), (g2, s2) in zip(reduced, reduced[1:]):
        assert not (g1 == g2 and s1 == -s2)


@settings(max_examples=200, derandomize=True)
@given(letters, letters)
def test_group_laws(ls1, ls2):
    u, v = Word.make(ls1), Word.make(ls2)
    assert (u * v) * v.inverse() == u
    assert (u * u.inverse()).is_identity()
    assert (u * v).inverse() == v.inverse() * u.inverse()


@settings(max_examples=100, derandomize=True)
@given(letters, st.integers(min_value=-4, max_value=4))
def test_powers(ls, n):
    w = Word.make(ls)
    out = Word.identity()
    base = w if n >= 0 else w.inverse()
    for _ in range(abs(n)):
        out = out * base
    assert w ** n == out
    assert exponent_sum(w ** n, "a") == n * exponent_sum(w, "a")


def test_word_str_groups_exponents():
    w = Word.gen("a", 2) * Word.gen("b", -3)
    assert str(w) == "a^2 b^-3"
    assert str(Word.identity()) == "1"


def test_commutator_shape():
    c = commutator(Word.gen("x"), Word.gen("y"))
    assert c.letters == (("x", 1), ("y", 1), ("x", -1), ("y", -1))


def test_parse_basic_forms():
    p = parse_presentation("< x, y | x y x^-1 y >")
    assert p.generators == ("x", "y")
    assert str(p.relators[0]) == "x y x^-1 y"

    p = parse_presentation("< x, y | [x,y] >")
    assert p.relators == (commutator(Word.gen("x"), Word.gen("y")),)

    p = parse_presentation("< a, b, c, d | comm(a b ; c d) >")
    assert len(p.relators) == 4
    assert p.relators[0] == commutator(Word.gen("a"), Word.gen("c"))
    assert p.relators[3] == commutator(Word.gen("b"), Word.gen("d"))


def test_parse_orientation_suffix():
    p = parse_presentation("< x, y- | >")
    assert p.orientation.get("y") == -1
    assert p.character(Word.gen("y")) == -1
    assert p.character(Word.gen("y", 2)) == 1


def test_parse_comments_and_whitespace():
    p = parse_presentation("# leading note\n< x , y |\n  [x,y] # trailing\n>")
    assert p.generators == ("x", "y")


def test_parse_round_trip():
    texts = [
        "< x, y | x y x^-1 y >",
        "< u, v, x, y | comm(u v ; x y), [u,v] x^-2, x y x^-1 y >",
        "< a, b- | a^2 b^-2 >",
    ]
    for text in texts:
        p = parse_presentation(text)
        again = parse_presentation(str(p))
        assert again.generators == p.generators
        assert again.relators == p.relators
        assert dict(again.orientation) == dict(p.orientation)


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as err:
        parse_presentation("< x |\n x q >")
    assert err.value.line == 2
    assert err.value.col == 4

    with pytest.raises(ParseError):
        parse_presentation("x, y | >")
    with pytest.raises(ParseError):
        parse_presentation("< x | x ^ y >")
    with pytest.raises(ParseError):
        parse_presentation("< x | x > junk")


def test_orientation_character_must_kill_relators():
    with pytest.raises(ValueError):
        Presentation(("x",), (Word.gen("x"),), {"x": -1})
    # even exponents are fine
    Presentation(("x",), (Word.gen("x", 2),), {"x": -1})


def test_presentation_rejects_unknown_generators():
    with pytest.raises(ValueError):
        Presentation(("x",), (Word.gen("y"),))
    with pytest.raises(ValueError):
        Presentation(("x", "x"), ())


def test_abelianization_examples():
    assert str(abelianization(parse_presentation("< x, y | x y x^-1 y >"))) == "Z + Z/2"
    assert str(abelianization(parse_presentation("< x, y | >"))) == "Z^2"
    assert str(abelianization(parse_presentation("< a, b | a^2 b^-3 >"))) == "Z"
    surface = parse_presentation("< a1, b1, a2, b2 | [a1,b1] [a2,b2] >")
    # the relator reduces the identity only after abelianizing; rank stays 4
    assert abelianization(surface).rank == 4


def test_exponent_matrix_shape():
    p = parse_presentation("< x, y | x^2, [x,y] >")
    m = p.exponent_matrix()
    assert m.rows == 2 and m.cols == 2
    assert m.column(0) == (2, 0)
    assert m.column(1) == (0, 0)
