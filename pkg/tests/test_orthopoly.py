"""Orthogonal polynomial families and their exchange identities."""

import pytest

from qserre.qfield import ONE, Q, QRat, RankTwoData
from qserre.coeffring import declare_standard_table
from qserre.orthopoly import (OPoly, cheby_biv_U_plain, cheby_deformed_plain,
                              cheby_tilde_plain, expand_biv_in_uni,
                              hermite_biv, hermite_biv_plain, hermite_plain,
                              hermite_uni, omega_Nk, rho_from_U, rho_sigma,
                              serre_P, serre_combination_biv, u_rescaled,
                              vm_sum)
from conftest import data_points

R_SAMPLES = (QRat.q_power(-1), QRat.q_power(-2), QRat.q_power(3),
             QRat.from_int(3))


# -- deformed Chebyshev ----------------------------------------------------

def test_cheby_low_order_golden():
    """Low-order closed forms: C_2 = 4x^2 - (r^-1 - q^2)/(1 - q^2),
    C_3 = 8x^3 - 2x ((r^-1-q^2)/(1-q^2) + (r^-1-q^3)/(1-q^3))."""
    for r in R_SAMPLES:
        c0 = cheby_deformed_plain(0, Q, r)
        c1 = cheby_deformed_plain(1, Q, r)
        assert c0 == OPoly.constant(1)
        assert c1 == OPoly.monomial(1, coeff=QRat.from_int(2))
        g2 = (r.inv() - QRat.q_power(2)) / (ONE - QRat.q_power(2))
        g3 = (r.inv() - QRat.q_power(3)) / (ONE - QRat.q_power(3))
        c2 = cheby_deformed_plain(2, Q, r)
        assert c2.coefficient(2).constant_value() == QRat.from_int(4)
        assert c2.coefficient(0).constant_value() == -g2
        assert c2.coefficient(1).is_zero()
        c3 = cheby_deformed_plain(3, Q, r)
        assert c3.coefficient(3).constant_value() == QRat.from_int(8)
        assert c3.coefficient(1).constant_value() == \
            QRat.from_int(-2) * (g2 + g3)


def test_cheby_degenerates_to_classical_second_kind():
    """At r = 1 the family is classical Chebyshev U_n (own recursion)."""
    u = [OPoly.constant(1), OPoly.monomial(1, coeff=QRat.from_int(2))]
    for n in range(2, 9):
        u.append(u[-1].mul_x().scale(QRat.from_int(2)) - u[-2])
    for n in range(9):
        assert cheby_deformed_plain(n, Q, ONE) == u[n]


def test_cheby_tilde_low_orders():
    for r in R_SAMPLES:
        assert cheby_tilde_plain(0, Q, r) == OPoly.constant(1)
        t1 = cheby_tilde_plain(1, Q, r)
        assert t1.coefficient(1).constant_value() == QRat.from_int(2)
        assert t1.coefficient(2).is_zero()


# -- Hermite towers --------------------------------------------------------

def test_hermite_recursion_plain():
    """2x H_m = H_{m+1} + (1 - q^m) H_m-1."""
    for m in range(1, 9):
        lhs = hermite_plain(m, Q).mul_x().scale(QRat.from_int(2))
        rhs = hermite_plain(m + 1, Q) \
            + hermite_plain(m - 1, Q).scale(ONE - QRat.q_power(m))
        assert lhs == rhs


def test_hermite_bivariate_symmetry():
    for r in R_SAMPLES[:2]:
        for m in range(6):
            for n in range(6):
                assert hermite_biv_plain(m, n, Q, r) == \
                    hermite_biv_plain(n, m, Q, r).swap_xy()


def test_bivariate_expands_in_univariate():
    for data in data_points(range(0, -5, -1)):
        table = declare_standard_table(data, "I")
        for m in range(7):
            for n in range(7):
                assert expand_biv_in_uni(m, n, data, table) == \
                    hermite_biv(m, n, data, table)


def test_v_family_sum_formula():
    for data in data_points(range(0, -4, -1), ((1, 1), (1, 2))):
        table = declare_standard_table(data, "I")
        for m in range(9):
            assert vm_sum(m, data, table) == \
                hermite_uni(m, data, "v", table)


def test_bar_swaps_w_and_primed_v():
    for data in data_points(range(0, -4, -1), ((1, 1), (2, 1))):
        table = declare_standard_table(data, "I")
        for m in range(9):
            assert hermite_uni(m, data, "w", table).bar() == \
                hermite_uni(m, data, "v", table, primed=True)


def test_bar_of_bivariate_serre_combination():
    for a in range(0, -6, -1):
        data = RankTwoData(a, a, 1, 1)
        table = declare_standard_table(data, "I")
        assert serre_combination_biv(a, "bivariate", data, table).bar() == \
            serre_combination_biv(a, "bivariate", data, table, primed=True)


def test_serre_combination_three_shapes_agree():
    for a in range(0, -7, -1):
        data = RankTwoData(a, a, 1, 1)
        table = declare_standard_table(data, "I")
        biv = serre_combination_biv(a, "bivariate", data, table)
        assert biv == serre_combination_biv(a, "uni_wv", data, table)
        assert biv == serre_combination_biv(a, "uni_vw", data, table)


# -- Serre polynomial of the U family -------------------------------------

def test_serre_P_recursion_equals_closed_form():
    for N in range(1, 8):
        assert serre_P(N, "recursion") == serre_P(N, "closed")


def test_omega_vanishing():
    """The interior alternating Pochhammer sums all vanish."""
    zero = QRat.from_int(0)
    for N in range(1, 8):
        for k in range(1, N):
            assert omega_Nk(N, k) == zero


# -- rescaled u family and the recursion towers ----------------------------

def test_u_rescaled_low_orders():
    data = RankTwoData(-2, -2, 1, 1)
    table = declare_standard_table(data, "II")
    assert u_rescaled(-1, data, table).is_zero()
    assert u_rescaled(0, data, table) == OPoly.constant(1, table)
    assert u_rescaled(1, data, table) == OPoly.monomial(1, table=table)
    assert u_rescaled(1, data, table, inverse=True) == \
        OPoly.monomial(1, table=table)


def test_rho_matches_independent_U_construction():
    for data in data_points(range(-1, -4, -1), ((1, 1), (1, 2))):
        table = declare_standard_table(data, "II")
        for m in range(2, 5):
            for n in range(0, 3):
                assert rho_from_U(m, n, data, table) == \
                    rho_sigma(m, n, "rho", data, table)
