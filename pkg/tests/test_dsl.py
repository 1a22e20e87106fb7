import pytest
from hypothesis import given, strategies as st

from charvar.covers import load_ceva_group
from charvar.dsl import DSLParseError, parse_group_dsl, parse_group_dsl_named, render_group_dsl
from charvar.fixtures import data_text
from charvar.words import GroupPresentation, Word, commutator


def test_free_group():
    P = parse_group_dsl("group F2 { gens a b; }")
    assert P.names == ("a", "b") and P.relators == ()


def test_bundled_ceva_file():
    name, P = parse_group_dsl_named(data_text("ceva.grp"))
    assert name == "Ceva" and P.ngens == 6 and len(P.relators) == 9


def test_shorthands():
    P = parse_group_dsl("group G { gens a b c; rel [a, b]; rel a b = b a; rel (a b)^2 c^-1; rel comm3(a, b, c); }")
    a, b, c = (Word.gen(i) for i in range(3))
    assert P.relators[0] == commutator(a, b)
    assert P.relators[1] == a * b * a.inverse() * b.inverse()
    assert P.relators[2] == a * b * a * b * c.inverse()
    abc = a * b * c
    assert P.relators[3:] == (commutator(abc, a), commutator(abc, b), commutator(abc, c))


def test_degrees():
    P = parse_group_dsl("group G { gens a b; rel a b; degrees 1 2; }")
    assert P.degrees == (1, 2)


@pytest.mark.parametrize("text, line, col, what", [
    ("group X {\n  gens a;\n  rel a^0;\n}", 3, 9, "zero exponent"),
    ("group X { gens a; rel b; }", 1, 23, "unknown generator"),
    ("group X { gens a b; rel [a, b; }", 1, 30, "expected"),
    ("group X { gens a; rel (a; }", 1, 25, "expected"),
    ("group X { gens a; rel a^x; }", 1, 25, "malformed exponent"),
])
def test_errors_have_positions(text, line, col, what):
    with pytest.raises(DSLParseError) as exc:
        parse_group_dsl(text)
    assert exc.value.line == line and exc.value.col == col
    assert what in str(exc.value)


words = st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3).filter(bool)), min_size=1, max_size=6)


@given(st.lists(words, max_size=4), st.booleans())
def test_round_trip(rels, with_degrees):
    rels = tuple(w for w in (Word(tuple(r)) for r in rels) if w)
    P = GroupPresentation(("a", "b", "c"), rels, (1, 1, 1) if with_degrees else None)
    assert parse_group_dsl(render_group_dsl(P)) == P


def test_round_trip_ceva():
    G = load_ceva_group()
    assert parse_group_dsl(render_group_dsl(G, "Ceva")) == G
