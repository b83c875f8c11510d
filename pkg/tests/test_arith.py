from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circhopf.arith import (
    BackendMismatch,
    FloatC,
    GaussQ,
    Laurent,
    NotInvertible,
    laurent_mu,
    scalar_from_json,
    scalar_to_json,
    tolerance,
)

small = st.fractions(min_value=-50, max_value=50, max_denominator=20)
gauss = st.builds(GaussQ, small, small)
laurent = st.dictionaries(st.integers(-4, 4), small, max_size=4).map(Laurent)


@given(gauss, gauss, gauss)
def test_gaussq_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + GaussQ(0) == a and a * GaussQ(1) == a
    assert a - a == GaussQ(0)


@given(gauss)
def test_gaussq_inverse_and_conjugate(a):
    if a == GaussQ(0):
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == GaussQ(1)
    assert a.conj().conj() == a
    assert a * a.conj() == GaussQ(a.abs2())


@given(gauss, gauss)
def test_gaussq_conjugation_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()


@settings(max_examples=60)
@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p


@given(laurent, st.integers(-5, 5), small.filter(bool))
def test_laurent_division_by_monomial(p, e, c):
    m = Laurent.monomial(e, c)
    assert (p / m) * m == p
    assert m * m.inverse() == Laurent.monomial(0)


def test_laurent_non_monomial_not_invertible():
    with pytest.raises(NotInvertible):
        (Laurent.monomial(1) + Laurent.monomial(0)).inverse()


def test_laurent_mu_and_evaluation():
    assert laurent_mu(1) == Laurent({2: 1})
    assert laurent_mu(-1) == Laurent({2: -1})
    assert Laurent({2: 1, -1: 3}).evaluate(2.0) == pytest.approx(5.5)
    with pytest.raises(ValueError):
        laurent_mu(0)


def test_floatc_tolerant_equality():
    assert FloatC(1.0) == FloatC(1.0 + 1e-14)
    assert FloatC(1.0) != FloatC(1.1)
    with tolerance(eq=0.5):
        assert FloatC(1.0) == FloatC(1.1)


def test_backend_mixing_is_rejected():
    with pytest.raises(BackendMismatch):
        GaussQ(1) + FloatC(1.0)


@given(gauss)
def test_gaussq_json_round_trip(a):
    assert scalar_from_json(scalar_to_json(a)) == a


@given(laurent)
def test_laurent_json_round_trip(p):
    assert scalar_from_json(scalar_to_json(p)) == p


def test_rational_parsing():
    assert GaussQ("3/4", "-1/2") == GaussQ(Fraction(3, 4), Fraction(-1, 2))
