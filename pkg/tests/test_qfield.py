"""Exact Q(q) arithmetic and q-combinatorial primitives."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qserre.qfield import (ONE, Q, ZERO, DivisionByZero, NegativeIndex, QRat,
                           RankTwoData, q_binomial, q_factorial, q_integer,
                           q_pochhammer, qpow_pochhammer)


def _rat(coeffs):
    """Polynomial in q from a list of small integer coefficients."""
    out = ZERO
    for k, c in enumerate(coeffs):
        out = out + QRat.from_int(c) * QRat.q_power(k)
    return out


small_ints = st.lists(st.integers(-9, 9), min_size=1, max_size=5)
nonzero_polys = small_ints.filter(lambda c: any(c))


# -- field axioms ----------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(small_ints, small_ints, nonzero_polys)
def test_field_ring_axioms(a, b, c):
    x, y, z = _rat(a), _rat(b), _rat(c)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert (x / z) * z == x
    assert x - x == ZERO
    assert x * ONE == x


@settings(max_examples=40, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_canonical_equality(a, b):
    x, y = _rat(a), _rat(b)
    assert (x / y) * (y / x) == ONE
    # same value through different computations compares equal
    assert x / y == (x * x) / (x * y)


def test_zero_denominator_raises():
    with pytest.raises(DivisionByZero):
        ONE / ZERO
    with pytest.raises(DivisionByZero):
        ZERO.inv()


# -- bar and substitution --------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(small_ints, nonzero_polys)
def test_bar_is_field_involution(a, b):
    x = _rat(a) / _rat(b)
    assert x.bar().bar() == x
    y = _rat(b)
    assert (x * y).bar() == x.bar() * y.bar()
    assert (x + y).bar() == x.bar() + y.bar()


def test_bar_inverts_q():
    assert Q.bar() == Q.inv()
    assert QRat.q_power(5).bar() == QRat.q_power(-5)


@settings(max_examples=40, deadline=None)
@given(small_ints, nonzero_polys, st.integers(1, 4))
def test_subst_power_is_homomorphism(a, b, d):
    x = _rat(a) / _rat(b)
    y = _rat(b)
    assert (x * y).subst_power(d) == x.subst_power(d) * y.subst_power(d)
    assert Q.subst_power(d) == QRat.q_power(d)


# -- q-combinatorics -------------------------------------------------------

def test_q_integer_golden():
    assert q_integer(1) == ONE
    assert q_integer(2) == Q + Q.inv()
    assert q_integer(3) == QRat.q_power(2) + ONE + QRat.q_power(-2)
    # nonsymmetric mode
    assert q_integer(3, QRat.q_power(2)) == ONE + QRat.q_power(2) \
        + QRat.q_power(4)
    with pytest.raises(NegativeIndex):
        q_integer(-1, Q)


def test_q_binomial_balanced_and_symmetric():
    for n in range(8):
        for k in range(n + 1):
            b = q_binomial(n, k)
            assert b == b.bar()                       # balanced
            assert b == q_binomial(n, n - k)          # symmetric
            assert b == q_factorial(n) / (q_factorial(k)
                                          * q_factorial(n - k))


def test_q_binomial_pascal():
    for n in range(1, 8):
        for k in range(1, n):
            lhs = q_binomial(n, k)
            rhs = QRat.q_power(k) * q_binomial(n - 1, k) \
                + QRat.q_power(k - n) * q_binomial(n - 1, k - 1)
            assert lhs == rhs


def test_pochhammer_product_forms():
    for k in range(6):
        p = ONE
        for j in range(k):
            p = p * (ONE - QRat.q_power(2) * QRat.q_power(2 * j))
        assert qpow_pochhammer(2, 2, k) == p
        assert q_pochhammer(QRat.q_power(2), QRat.q_power(2), k) == p
    assert q_pochhammer(Q, Q, 0) == ONE


def test_alternating_binomial_sums():
    """Two alternating q-binomial identities used by the flip case."""
    for ell in range(11):
        s1, s2 = ZERO, ZERO
        for n in range(ell + 1):
            c = QRat.from_int((-1) ** n) * q_binomial(ell, n)
            s1 = s1 + c * QRat.q_power(n * (ell + 1))
            s2 = s2 + c * QRat.q_power(n * (ell - 1))
        assert s1 == qpow_pochhammer(2, 2, ell)
        if ell >= 1:
            assert s2 == ZERO


# -- rank-two data ---------------------------------------------------------

def test_rank_two_data():
    data = RankTwoData(-3, -1, 1, 3)
    assert data.d_i * data.a_ij == data.d_j * data.a_ji
    assert data.qi_power(2) == QRat.q_power(2 * data.d_i)
    assert data.qi_power(0) == ONE
