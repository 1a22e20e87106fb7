import pytest
from hypothesis import given, settings, strategies as st

from charvar.laurent import LaurentMatrix, LaurentPoly, parse_laurent, phi, q_sum
from charvar.words import Character

NAMES = ["t1", "t2", "t3"]


def polys(nv=3):
    mono = st.tuples(*[st.integers(-3, 3)] * nv)
    return st.dictionaries(mono, st.integers(-5, 5), max_size=5).map(lambda d: LaurentPoly(nv, d))


chars = st.integers(1, 10).flatmap(lambda N: st.tuples(*[st.integers(0, N - 1)] * 3).map(
    lambda e: Character(N, e)))


@settings(max_examples=300)
@given(polys(), polys(), chars)
def test_evaluate_is_a_ring_homomorphism(p, q, chi):
    assert (p * q).evaluate(chi) == p.evaluate(chi) * q.evaluate(chi)
    assert (p + q).evaluate(chi) == p.evaluate(chi) + q.evaluate(chi)


@given(polys())
def test_render_parse_round_trip(p):
    assert parse_laurent(p.render(NAMES), NAMES) == p


def test_render_examples():
    t = [LaurentPoly.var(3, i) for i in range(3)]
    assert (t[2] - 1).render(NAMES) == "t3 - 1"
    assert (1 - t[1]).render(NAMES) == "-t2 + 1"
    assert LaurentPoly.zero(3).render(NAMES) == "0"


def test_ring_axioms_small():
    t1, t2 = LaurentPoly.var(2, 0), LaurentPoly.var(2, 1)
    assert (t1 - 1) * (t1 + 1) == t1 ** 2 - 1
    assert t1 ** -1 * t1 == 1
    with pytest.raises(ValueError):
        (t1 + t2) ** -1


def test_phi_and_q_sum():
    t = LaurentPoly.var(1, 0)
    assert phi(3, 0, 1) == 1 + t + t ** 2
    assert q_sum(3, 0, 1) * (t - 1) == t ** 3 - 1
    assert q_sum(-2, 0, 1) * (t - 1) == t ** -2 - 1
    assert q_sum(0, 0, 1) == 0


def test_at_one_and_substitute():
    t1, t2 = LaurentPoly.var(2, 0), LaurentPoly.var(2, 1)
    p = t1 * t2 ** -1 * 3 - t2
    assert p.at_one() == 2
    assert p.substitute([t2, t1]) == t2 * t1 ** -1 * 3 - t1


def test_matrix_parse_render_and_evaluate():
    M = LaurentMatrix.parse("t1 - 1 | 0\n0 | t2^2 + 1", ["t1", "t2"])
    assert M.shape == (2, 2)
    assert LaurentMatrix.parse(M.render(["t1", "t2"]), ["t1", "t2"]) == M
    E = M.evaluate(Character(4, (0, 1)))
    assert E[0][0].is_zero() and E[1][1].is_zero()
