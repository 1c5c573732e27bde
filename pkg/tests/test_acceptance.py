"""Acceptance gate: ten exact-equality criteria with runtime budgets.

Every check is an exact symbolic identity in Q(q) (zero tolerance).
Each criterion prints one PASS/FAIL line (visible with ``pytest -s``;
under plain ``pytest -v`` the per-test PASSED/FAILED line serves the
same purpose) and asserts its runtime budget.
"""

import time
from contextlib import contextmanager

from qserre.qfield import (ONE, Q, QRat, RankTwoData, ZERO, q_binomial,
                           qpow_pochhammer)
from qserre.coeffring import declare_standard_table
from qserre.orthopoly import (OPoly, cheby_deformed_plain, expand_biv_in_uni,
                              hermite_biv, hermite_biv_plain, hermite_uni,
                              omega_Nk, serre_P, serre_combination_biv,
                              vm_sum)
from qserre.genfun import (PoleInCoefficient, check_functional_equation,
                           check_phi_identity)
from qserre.staralg import (FWord, StarElement, filtration_violations,
                            star_left_Fi, star_left_classical_power,
                            serre_star_reduce, verify_ansatz)
from qserre.relations import example_rows, make_data, verify_theorem
from conftest import WEIGHT_GRID, data_points


@contextmanager
def _criterion(num, budget):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        print(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} "
              f"({dt:.1f}s, budget {budget}s)")
        if ok:
            assert dt < budget, \
                f"criterion {num} over budget: {dt:.1f}s >= {budget}s"


def test_criterion_01_chebyshev_golden():
    with _criterion(1, 1):
        for r in (QRat.q_power(-1), QRat.q_power(-3), QRat.from_int(3)):
            g2 = (r.inv() - QRat.q_power(2)) / (ONE - QRat.q_power(2))
            g3 = (r.inv() - QRat.q_power(3)) / (ONE - QRat.q_power(3))
            c2 = cheby_deformed_plain(2, Q, r)
            assert c2.coefficient(2).constant_value() == QRat.from_int(4)
            assert c2.coefficient(1).is_zero()
            assert c2.coefficient(0).constant_value() == -g2
            c3 = cheby_deformed_plain(3, Q, r)
            assert c3.coefficient(3).constant_value() == QRat.from_int(8)
            assert c3.coefficient(1).constant_value() == \
                QRat.from_int(-2) * (g2 + g3)
        # classical second-kind Chebyshev degeneration at r = 1
        u = [OPoly.constant(1), OPoly.monomial(1, coeff=QRat.from_int(2))]
        for n in range(2, 9):
            u.append(u[-1].mul_x().scale(QRat.from_int(2)) - u[-2])
        for n in range(9):
            assert cheby_deformed_plain(n, Q, ONE) == u[n]


def test_criterion_02_hermite_identity_suite():
    with _criterion(2, 10):
        # bivariate-in-univariate expansion, m, n <= 6
        for data in data_points(range(0, -5, -1)):
            table = declare_standard_table(data, "I")
            for m in range(7):
                for n in range(7):
                    assert expand_biv_in_uni(m, n, data, table) == \
                        hermite_biv(m, n, data, table)
        # bivariate symmetry, m, n <= 5
        for r in (QRat.q_power(-1), QRat.q_power(-2)):
            for m in range(6):
                for n in range(6):
                    assert hermite_biv_plain(m, n, Q, r) == \
                        hermite_biv_plain(n, m, Q, r).swap_xy()
        # v-family: recursion vs defining sum, m <= 8
        for data in data_points(range(0, -4, -1), ((1, 1), (1, 2))):
            table = declare_standard_table(data, "I")
            for m in range(9):
                assert vm_sum(m, data, table) == \
                    hermite_uni(m, data, "v", table)
        # bar swaps the w and primed-v families, m <= 8
        for data in data_points(range(0, -6, -1), ((1, 1),)):
            table = declare_standard_table(data, "I")
            for m in range(9):
                assert hermite_uni(m, data, "w", table).bar() == \
                    hermite_uni(m, data, "v", table, primed=True)
        # bar of the bivariate Serre combination is the primed one
        for a in range(0, -6, -1):
            data = RankTwoData(a, a, 1, 1)
            table = declare_standard_table(data, "I")
            assert serre_combination_biv(a, "bivariate", data,
                                         table).bar() == \
                serre_combination_biv(a, "bivariate", data, table,
                                      primed=True)


def test_criterion_03_serre_combination_three_shapes():
    with _criterion(3, 10):
        for a in range(0, -7, -1):
            data = RankTwoData(a, a, 1, 1)
            table = declare_standard_table(data, "I")
            biv = serre_combination_biv(a, "bivariate", data, table)
            assert biv == serre_combination_biv(a, "uni_wv", data, table)
            assert biv == serre_combination_biv(a, "uni_vw", data, table)


def test_criterion_04_serre_polynomial_closed_form():
    with _criterion(4, 10):
        for N in range(1, 8):
            assert serre_P(N, "recursion") == serre_P(N, "closed")
            for k in range(1, N):
                assert omega_Nk(N, k) == ZERO


def test_criterion_05_generating_functions():
    with _criterion(5, 60):
        for a in range(-6, 1):
            assert check_functional_equation("eta", a, (12,)).passed
        for a in (0, 1, 2):
            assert check_functional_equation("eta_tilde", a, (12,)).passed
        try:
            check_functional_equation("eta_tilde", -1, (12,))
            raise AssertionError("pole not detected")
        except PoleInCoefficient:
            pass
        assert check_functional_equation("psi", 0, (10, 6)).passed
        for aij in range(0, -5, -1):
            assert check_phi_identity(2 * aij, (10, 6)).passed
        # mutation tests must fail
        assert not check_functional_equation("eta", -2, (12,),
                                             mutate=(5,)).passed
        assert not check_functional_equation("psi", 0, (10, 6),
                                             mutate=(3, 2)).passed
        assert not check_phi_identity(-2, (10, 6), mutate=(3, 2)).passed


def test_criterion_06_normal_form_ansatz_suite():
    with _criterion(6, 120):
        for case in ("I", "II"):
            for data in data_points(range(0, -5, -1)):
                table = declare_standard_table(data, case)
                for m in range(8):
                    for n in range(8 - m):
                        assert verify_ansatz(m, n, case, data,
                                             table).is_zero(), \
                            (case, data, m, n)
        for a in range(0, -5, -1):
            data = RankTwoData(a, a, 1, 1)
            table = declare_standard_table(data, "III")
            for m in range(8):
                for n in range(8 - m):
                    assert verify_ansatz(m, n, "III", data,
                                         table).is_zero(), (a, m, n)


def test_criterion_07_main_theorem_plain_case():
    with _criterion(7, 60):
        rep = verify_theorem("I", range(0, -5, -1))
        assert rep["pass"], rep


def test_criterion_08_main_theorem_crossing_case():
    with _criterion(8, 120):
        # zero remainder plus the C/D triple cross-check on every point
        rep = verify_theorem("II", range(0, -5, -1))
        assert rep["pass"], rep
        # the worked low-rank table, including a_ij = -3
        rows = example_rows()
        assert [r["aij"] for r in rows] == [0, -1, -2, -3]
        assert all(r["match"] for r in rows), rows


def test_criterion_09_main_theorem_flip_case():
    with _criterion(9, 30):
        rep = verify_theorem("III", range(0, -5, -1))
        assert rep["pass"], rep
        # the two alternating q-binomial summation lemmas, l <= 10
        for ell in range(11):
            s1, s2 = ZERO, ZERO
            for n in range(ell + 1):
                c = QRat.from_int((-1) ** n) * q_binomial(ell, n)
                s1 = s1 + c * QRat.q_power(n * (ell + 1))
                s2 = s2 + c * QRat.q_power(n * (ell - 1))
            assert s1 == qpow_pochhammer(2, 2, ell)
            if ell >= 1:
                assert s2 == ZERO


def test_criterion_10_engine_axioms():
    with _criterion(10, 30):
        # filtration check ran on every rule application above
        assert filtration_violations() == 0
        # associativity spot-checks: (F_i * F_i) * e == F_i * (F_i * e)
        from qserre.orthopoly import z_quarter_b2
        for case in ("I", "II", "III"):
            data = RankTwoData(-2, -2, 1, 1)
            table = declare_standard_table(data, case)
            words = [FWord.pure(2), FWord.pure(4)]
            if case == "I":
                words.append(FWord.sandwich(2, 1))
            for w in words:
                e = StarElement.from_word(table, w)
                lhs = star_left_Fi(star_left_Fi(e, case, data), case, data)
                rhs = star_left_classical_power(2, e, case, data)
                if case != "III":
                    zb = z_quarter_b2(table, data)
                    rhs = rhs + e.attach_commuting_left(
                        zb.scale(ONE - data.qi_power(2)))
                assert (lhs - rhs).is_zero(), (case, w)
        assert filtration_violations() == 0
