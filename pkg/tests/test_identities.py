import numpy as np
import pytest

from toeplitz_hankel.determinants import LogDet, det_lu
from toeplitz_hankel.errors import NotEven, UnsupportedCase
from toeplitz_hankel.identities import (
    predict_shifted,
    shifted_case,
    szego_gate,
    verify_bogc_even,
    verify_bogc_general,
    verify_szego,
)
from toeplitz_hankel.operators import I, II, III, IV, REALIZATIONS, m_section, shifted_section
from toeplitz_hankel.symbol import FourierSymbol, exp_symbol

one = FourierSymbol.constant(1.0)


def log_sym(coeffs):
    return exp_symbol(FourierSymbol.from_coeffs(coeffs))


bessel = log_sym({1: 0.3, -1: 0.3})
even_rich = log_sym({1: 0.25, -1: 0.25, 2: -0.1j, -2: -0.1j, 3: 0.05, -3: 0.05})
general = log_sym({-1: 0.5, 1: 0.3})


@pytest.mark.parametrize("r", REALIZATIONS, ids=str)
def test_bogc_even_trivial(r):
    for n in (1, 3, 7):
        rep = verify_bogc_even(one, n, r)
        assert rep.passed and rep.rel_err == 0


@pytest.mark.parametrize("a", [bessel, even_rich], ids=["bessel", "rich"])
@pytest.mark.parametrize("r", REALIZATIONS, ids=str)
def test_bogc_even_exact_for_all_small_n(a, r):
    for n in range(1, 17):
        rep = verify_bogc_even(a, n, r)
        assert rep.rel_err <= 1e-10, (n, rep.rel_err)
        assert rep.params["truncation"] >= 32


def test_bogc_even_rejects_non_even():
    with pytest.raises(NotEven):
        verify_bogc_even(general, 4, I)


def test_bogc_II_is_I_of_reflected_symbol():
    for n in (3, 8):
        l2 = verify_bogc_even(even_rich, n, II).lhs
        l1 = verify_bogc_even(even_rich.reflect(), n, I).lhs
        assert l2.rel_err(l1) <= 1e-12


def test_bogc_general_examples():
    rep = verify_bogc_general(one, 4, I)
    assert rep.passed and rep.rel_err == 0
    rep = verify_bogc_general(general, 6, I)
    assert rep.rel_err <= 1e-9


@pytest.mark.parametrize("r", REALIZATIONS, ids=str)
def test_bogc_general_agrees_with_even_path(r):
    for n in (2, 5):
        assert verify_bogc_even(bessel, n, r).passed
        assert verify_bogc_general(bessel, n, r).passed


@pytest.mark.parametrize("r", REALIZATIONS, ids=str)
def test_bogc_general_other_realizations(r):
    a = log_sym({-2: 0.2, -1: 0.1j, 1: 0.3, 2: -0.05})
    for n in (1, 4, 8):
        assert verify_bogc_general(a, n, r).rel_err <= 1e-9


def test_szego_trivial():
    for rep in verify_szego(one, III, [2, 4, 8]):
        assert rep.rel_err == 0 and rep.passed


def test_szego_bessel_I():
    reps = verify_szego(bessel, I, [4, 8, 16, 32])
    errs = [r.rel_err for r in reps]
    assert errs[-1] <= 1e-9 and errs[-1] < errs[0]
    assert all(r.passed for r in reps)


def test_szego_non_even_III():
    a = log_sym({0: 0.2, 1: 0.1, -2: 0.05})
    reps = verify_szego(a, III, [8, 32])
    assert reps[1].rel_err < reps[0].rel_err and reps[1].passed


def test_szego_rejects_unsorted_list():
    with pytest.raises(ValueError):
        verify_szego(bessel, I, [8, 4])


def test_szego_gate():
    assert szego_gate([1e-3, 1e-9], 1e-8)
    assert not szego_gate([1e-9, 1e-3], 1e-8)
    assert not szego_gate([1e-3, 1e-7], 1e-8)
    assert szego_gate([0.0, 0.0], 1e-8)


def test_shifted_case_table():
    assert shifted_case(-2, 1, 5) == (1, 1, "plusH")
    assert shifted_case(-4, -1, 5) == (1, 2, "minusH")
    assert shifted_case(-3, -1, 5) == (2, 1, "minusHt")
    assert shifted_case(-1, 1, 5) == (3, 1, "plusHt")
    assert shifted_case(-5, 1, 5) == (3, 3, "plusHt")
    assert shifted_case(3, 1, 5)[0] == 4
    assert shifted_case(1, -1, 5)[0] == 4
    for k, sign, n in ((0, 1, 5), (-1, -1, 5), (1, 1, 5), (6, 1, 5), (6, -1, 5)):
        with pytest.raises(UnsupportedCase):
            shifted_case(k, sign, n)


@pytest.mark.parametrize("sign", [1, -1])
def test_shifted_trivial_symbol(sign):
    rep = predict_shifted(one, -2, sign, 6)
    assert rep.lhs.rel_err(LogDet(0.0, 0.0)) == 0 and rep.passed


def test_shifted_case4_zero():
    rep = predict_shifted(bessel, 2, 1, 10)
    assert rep.lhs.zero_flag and rep.passed and rep.params["case"] == 4


@pytest.mark.parametrize("a", [bessel, log_sym({-1: 0.2, 1: 0.3, 2: 0.05, -2: 0.1})], ids=["even", "general"])
@pytest.mark.parametrize("k,sign", [(-2, 1), (-2, -1), (-4, 1), (-3, -1), (-5, -1), (-1, 1), (-3, 1)])
def test_shifted_cases_1_to_3(a, k, sign):
    rep = predict_shifted(a, k, sign, 40, convention="from_n0")
    assert rep.rel_err <= 1e-7, rep.rel_err


def test_shifted_case1_discriminates_convention():
    good = predict_shifted(bessel, -2, 1, 40, convention="from_n0")
    bad = predict_shifted(bessel, -2, 1, 40, convention="from_n1")
    assert good.passed and not bad.passed
    # the two predictions differ by exactly e^{b_1}
    assert abs(np.exp(good.rhs.log_abs - bad.rhs.log_abs) - np.exp(0.3)) <= 1e-12


def test_shifted_out_of_scope_report():
    rep = predict_shifted(bessel, -1, -1, 10)
    assert rep.passed is None and "outside theorem scope" in rep.notes
    assert not rep.lhs.zero_flag


def test_shifted_corner_identity():
    a = log_sym({-1: 0.2, 1: 0.3})
    n, l = 9, 2
    for sign, r in ((1, I), (-1, II)):
        small = det_lu(shifted_section(a, n, -2 * l, sign))
        corner = det_lu(m_section(a, n + l, r)[l:, l:])
        assert small.rel_err(corner) == 0
