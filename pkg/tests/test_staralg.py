"""Star-product rewriting engine: normal forms, filtration, the
antilinear isomorphism, and the closed-form right-side terms."""

import pytest

from qserre.qfield import ONE, QRat, RankTwoData
from qserre.coeffring import CPoly, NonCommutingCross, declare_standard_table
from qserre.orthopoly import hermite_uni, z_quarter_b2
from qserre.staralg import (FWord, StarElement, WordShapeError, case2_CD,
                            filtration_violations, phi_map,
                            serre_classical_combination, serre_rhs,
                            serre_star_combination, serre_star_reduce,
                            star_eval_poly, star_left_Fi, star_left_Fj,
                            star_left_classical_power, star_power_chain,
                            verify_ansatz)
from conftest import data_points

DATA = RankTwoData(-2, -2, 1, 1)


# -- words and elements ----------------------------------------------------

def test_word_shapes():
    assert FWord.pure(3).fdegree() == 3
    assert FWord.sandwich(2, 1).fdegree() == 4
    assert FWord.pure(0).fdegree() == 0


def test_attach_side_validation():
    table = declare_standard_table(DATA, "II")
    e = StarElement.from_word(table, FWord.pure(1))
    with pytest.raises(WordShapeError):
        e.attach_right(CPoly.symbol(table, "d"))     # d lives on the left
    with pytest.raises(WordShapeError):
        e.attach_left(CPoly.symbol(table, "Z"))      # Z lives on the right
    # and the legal versions round-trip through linearity
    a = e.attach_left(CPoly.symbol(table, "d")).attach_right(
        CPoly.symbol(table, "Z"))
    b = e.attach_right(CPoly.symbol(table, "Z")).attach_left(
        CPoly.symbol(table, "d"))
    assert (a - b).is_zero()


def test_flip_case_rejects_right_insertion():
    data = RankTwoData(-1, -1, 1, 1)
    table = declare_standard_table(data, "III")
    e = StarElement.from_word(table, FWord.sandwich(1, 1))
    with pytest.raises(WordShapeError):
        star_left_Fj(e, "III", data)


# -- star power expansions -------------------------------------------------

def test_pure_powers_expand_by_hermite_w():
    """F_i^m = w_m(F_i)^*: evaluating w_m through the star product gives
    back the single classical word, in every case."""
    for case in ("I", "II"):
        for data in data_points(range(0, -4, -1), ((1, 1), (1, 2))):
            table = declare_standard_table(data, case)
            for m in range(9):
                w = hermite_uni(m, data, "w", table)
                e = star_eval_poly(w, case, data)
                assert (e - StarElement.from_word(
                    table, FWord.pure(m))).is_zero(), (case, data, m)


def test_star_chain_inverts_classical_power():
    """Pushing the star expansion of F_i^m back through the chain."""
    data = DATA
    for case in ("I", "II", "III"):
        table = declare_standard_table(data, case)
        chain = star_power_chain(5, case, data, table)
        # chain[m] is F_i^{*m} as classical words; summing the w_m
        # coefficients of the classical power must invert it
        e = star_left_classical_power(
            3, StarElement.from_word(table, FWord.pure(0)), case, data)
        assert (e - StarElement.from_word(table, FWord.pure(3))).is_zero()
        assert chain[0] == StarElement.from_word(table, FWord.pure(0))


# -- the normal-form identity ---------------------------------------------

def test_ansatz_small_grid():
    for case in ("I", "II"):
        for data in data_points((0, -1, -3), ((1, 1), (2, 1))):
            table = declare_standard_table(data, case)
            for m in range(4):
                for n in range(4 - m):
                    assert verify_ansatz(m, n, case, data,
                                         table).is_zero(), (case, m, n)
    for a in (0, -2):
        data = RankTwoData(a, a, 1, 1)
        table = declare_standard_table(data, "III")
        for m in range(4):
            for n in range(4 - m):
                assert verify_ansatz(m, n, "III", data, table).is_zero()


def test_associativity_two_routes():
    """(F_i * F_i) * e equals F_i * (F_i * e): the left factor expands
    as F_i^2 plus (b^2/4)(1-q_i^2) in the plain and crossing cases, and
    exactly F_i^2 in the flip case."""
    for case in ("I", "II", "III"):
        a = -2
        data = RankTwoData(a, a, 1, 1)
        table = declare_standard_table(data, case)
        words = [FWord.pure(2)]
        if case == "I":
            words.append(FWord.sandwich(1, 1))
        for w in words:
            e = StarElement.from_word(table, w)
            lhs = star_left_Fi(star_left_Fi(e, case, data), case, data)
            rhs = star_left_classical_power(2, e, case, data)
            if case != "III":
                zb = z_quarter_b2(table, data)
                rhs = rhs + e.attach_commuting_left(
                    zb.scale(ONE - data.qi_power(2)))
            assert (lhs - rhs).is_zero(), (case, w)


# -- the antilinear isomorphism -------------------------------------------

def test_phi_swaps_closed_form_terms():
    for a in (-1, -2, -3):
        data = RankTwoData(a, a, 1, 1)
        table = declare_standard_table(data, "II")
        C = case2_CD("C", data, table)
        D = case2_CD("D", data, table)
        Cp = case2_CD("C", data, table, primed=True)
        Dp = case2_CD("D", data, table, primed=True)
        assert (phi_map(Cp, "II", data, source_primed=True) - D).is_zero()
        assert (phi_map(Dp, "II", data, source_primed=True) - C).is_zero()
        # involution across the two parameter families
        back = phi_map(phi_map(C, "II", data), "II", data,
                       source_primed=True)
        assert (back - C).is_zero()


def test_phi_fixes_flip_case_pure_words():
    data = RankTwoData(-1, -1, 1, 1)
    table = declare_standard_table(data, "III")
    e = StarElement.from_word(table, FWord.pure(2))
    img = phi_map(e, "III", data)
    assert (img - e).is_zero()


# -- full reductions -------------------------------------------------------

def test_serre_star_reduce_zero_sample():
    for case in ("I", "II", "III"):
        for a in (0, -1, -2):
            data = RankTwoData(a, a, 1, 1)
            assert serre_star_reduce(case, data).is_zero(), (case, a)


def test_right_side_zero_exactly_when_plain_or_trivial():
    data = RankTwoData(0, 0, 1, 1)
    for case in ("I", "II"):
        table = declare_standard_table(data, case)
        assert serre_rhs(case, data, table).is_zero()
    data = RankTwoData(-2, -2, 1, 1)
    table = declare_standard_table(data, "II")
    assert not serre_rhs("II", data, table).is_zero()


def test_no_filtration_violations_accumulated():
    assert filtration_violations() == 0
