import cmath

import pytest
from hypothesis import given, strategies as st

from charvar.cyclotomic import CyclotomicNumber, cyclotomic_polynomial, embed_root, totient


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert len(cyclotomic_polynomial(12)) - 1 == totient(12) == 4


def test_sum_of_roots_vanishes():
    for N in range(2, 9):
        assert CyclotomicNumber.from_root_counts(N, [1] * N).is_zero()


def test_equality_across_orders():
    assert embed_root(4, 2) == embed_root(2, 1)
    assert embed_root(2, 1) == CyclotomicNumber.from_int(1, -1)
    with pytest.raises(TypeError):
        hash(CyclotomicNumber.from_int(3, 1))


def _rand(N):
    return st.lists(st.integers(-4, 4), min_size=N, max_size=N).map(
        lambda c: CyclotomicNumber.from_root_counts(N, c))


@given(st.integers(2, 12).flatmap(lambda N: st.tuples(_rand(N), _rand(N))))
def test_arithmetic_matches_complex_values(pair):
    a, b = pair
    for x, y in ((a + b, a.to_complex() + b.to_complex()), (a * b, a.to_complex() * b.to_complex()),
                 (a - b, a.to_complex() - b.to_complex())):
        assert cmath.isclose(x.to_complex(), y, abs_tol=1e-8)
    if not b.is_zero():
        assert (a / b) * b == a


def test_root_value():
    z = embed_root(6, 1)
    assert cmath.isclose(z.to_complex(), cmath.exp(2j * cmath.pi / 6))
    assert z * z * z == CyclotomicNumber.from_int(6, -1)
