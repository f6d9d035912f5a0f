import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bessel_i, bessel_j, cofactor_det
from toeplitz_hankel.determinants import det_lu
from toeplitz_hankel.errors import NotEven
from toeplitz_hankel.operators import (
    I, II, III, IV, REALIZATIONS,
    Realization,
    correction_block,
    hankel_section,
    k_operator_block,
    k_symbol,
    m_section,
    matrix_to_csv,
    oplus_section,
    shifted_section,
    toeplitz_section,
)
from toeplitz_hankel.symbol import FourierSymbol, exp_symbol

one = FourierSymbol.constant(1.0)
t = FourierSymbol.monomial(1)
bessel_sym = exp_symbol(FourierSymbol.from_coeffs({1: 0.3, -1: 0.3}))


def random_symbol(seed, lo=-6, hi=6):
    rng = np.random.default_rng(seed)
    n = hi - lo + 1
    return FourierSymbol(rng.standard_normal(n) + 1j * rng.standard_normal(n), lo)


def test_realization_validation():
    assert str(Realization.shifted(-2, 1)) == "Shifted(k=-2,sign=+)"
    assert Realization.parse("iv") == IV
    with pytest.raises(ValueError):
        Realization("Shifted")
    with pytest.raises(ValueError):
        Realization("I", k=1, sign=1)
    with pytest.raises(ValueError):
        Realization.parse("V")


def test_toeplitz_examples():
    np.testing.assert_array_equal(toeplitz_section(one, 3), np.eye(3))
    np.testing.assert_array_equal(toeplitz_section(t, 3), np.eye(3, k=-1))
    assert abs(toeplitz_section(bessel_sym, 4)[0, 3] - bessel_i(3, 0.6)) <= 1e-15


def test_hankel_examples():
    np.testing.assert_array_equal(hankel_section(one, 3), np.zeros((3, 3)))
    np.testing.assert_array_equal(hankel_section(t, 2), [[1, 0], [0, 0]])
    np.testing.assert_array_equal(hankel_section(FourierSymbol.monomial(2), 2), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(hankel_section(FourierSymbol.monomial(3), 2), [[0, 0], [0, 1]])


@pytest.mark.parametrize("r", REALIZATIONS, ids=str)
def test_m_section_of_one_is_identity(r):
    np.testing.assert_array_equal(m_section(one, 5, r), np.eye(5))


def test_m_section_entry_formulas():
    a = random_symbol(1)
    n = 6
    for j in range(n):
        for k in range(n):
            assert m_section(a, n, I)[j, k] == a.coef(j - k) + a.coef(j + k + 1)
            assert m_section(a, n, II)[j, k] == a.coef(j - k) - a.coef(j + k + 1)
            assert m_section(a, n, III)[j, k] == a.coef(j - k) - a.coef(j + k + 2)
            assert m_section(a, n, IV)[j, k] == a.coef(j - k) + (a.coef(j + k) if k else 0)
    assert m_section(FourierSymbol.monomial(2), 3, III)[0, 0] == -1


def test_m_section_I_is_toeplitz_plus_hankel():
    m = m_section(bessel_sym, 8, I)
    np.testing.assert_array_equal(m, toeplitz_section(bessel_sym, 8) + hankel_section(bessel_sym, 8))
    np.testing.assert_allclose(m, m.T, rtol=0, atol=1e-16)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 9))
def test_realization_II_conjugates_to_I(seed, n):
    a = random_symbol(seed)
    d = np.diag((-1.0) ** np.arange(n))
    np.testing.assert_allclose(m_section(a, n, II), d @ m_section(a.reflect(), n, I) @ d, atol=1e-15)


def test_oplus_examples():
    np.testing.assert_array_equal(oplus_section(one, 3), np.diag([2, 1, 1]))
    assert oplus_section(one, 0).shape == (0, 0)
    assert det_lu(oplus_section(one, 0)).value == 1
    with pytest.raises(NotEven):
        oplus_section(t, 3)


def test_oplus_is_twice_realization_IV():
    ratio = det_lu(oplus_section(bessel_sym, 6)).value / det_lu(m_section(bessel_sym, 6, IV)).value
    assert abs(ratio - 2) <= 1e-13
    # independent evaluation of one side
    ref = cofactor_det(oplus_section(bessel_sym, 6).tolist())
    assert abs(det_lu(oplus_section(bessel_sym, 6)).value - ref) <= 1e-13 * abs(ref)


def test_shifted_k0_is_I_and_II():
    a = random_symbol(2)
    np.testing.assert_array_equal(shifted_section(a, 7, 0, 1), m_section(a, 7, I))
    np.testing.assert_array_equal(shifted_section(a, 7, 0, -1), m_section(a, 7, II))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_shifted_structural_columns(seed):
    a = random_symbol(seed)
    m = shifted_section(a, 8, 2, 1)
    np.testing.assert_array_equal(m[:, 0], m[:, 1])
    m = shifted_section(a, 8, 1, -1)
    np.testing.assert_array_equal(m[:, 0], np.zeros(8))
    for k in range(2, 9):
        plus, minus = shifted_section(a, 8, k, 1), shifted_section(a, 8, k, -1)
        np.testing.assert_array_equal(plus[:, 0], plus[:, k - 1])
        np.testing.assert_array_equal(minus[:, 0], -minus[:, k - 1])


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("l", [1, 2, 3])
def test_shifted_is_corner_of_unshifted(sign, l):
    a = random_symbol(5)
    n = 7
    big = m_section(a, n + l, I if sign > 0 else II)
    np.testing.assert_array_equal(shifted_section(a, n, -2 * l, sign), big[l:, l:])


def test_nonnegative_symbol_gives_triangular_toeplitz():
    a = FourierSymbol([2.0, 0.5, -0.3j], 0)
    m = toeplitz_section(a, 6)
    np.testing.assert_array_equal(np.triu(m, 1), np.zeros((6, 6)))
    assert abs(det_lu(m).value - 2.0 ** 6) <= 1e-12


def test_k_block_of_one_vanishes():
    for r in REALIZATIONS:
        np.testing.assert_array_equal(k_operator_block(one, r, 1, 4), np.zeros((4, 4)))


def test_k_block_bessel_j():
    block = k_operator_block(bessel_sym, I, 0, 6)
    ref = np.array([[(-1) ** (j + k + 1) * bessel_j(j + k + 1, 0.6) for k in range(6)] for j in range(6)])
    np.testing.assert_allclose(block, ref, atol=1e-15)
    np.testing.assert_allclose(k_operator_block(bessel_sym, I, 3, 3), ref[3:, 3:], atol=1e-15)


def test_k_block_decays_with_offset():
    c = k_symbol(bessel_sym)
    mags = [np.max(np.abs(k_operator_block(bessel_sym, I, off, 4, c=c))) for off in (1, 3, 5, 7, 9)]
    # geometric decay until the coefficients fall below the trimming threshold
    assert all(b < a or a == b == 0 for a, b in zip(mags, mags[1:]))
    assert mags[1] < 1e-3 * mags[0] and mags[2] < 1e-12


def test_k_block_forms():
    c = k_symbol(bessel_sym)
    off, size = 2, 5
    j = np.arange(off, off + size)
    jj, kk = j[:, None], j[None, :]
    np.testing.assert_array_equal(k_operator_block(bessel_sym, II, off, size), -c.coef(jj + kk + 1))
    np.testing.assert_array_equal(k_operator_block(bessel_sym, III, off, size), -c.coef(jj + kk + 2))
    np.testing.assert_array_equal(k_operator_block(bessel_sym, IV, off, size), c.coef(jj + kk))
    with pytest.raises(ValueError):
        k_operator_block(bessel_sym, IV, 0, size)


def test_correction_block_examples():
    np.testing.assert_array_equal(correction_block(one, 2, "plusH"), np.eye(2))
    np.testing.assert_array_equal(correction_block(one, 1, "plusHt"), [[2]])
    got = correction_block(bessel_sym, 1, "plusH")[0, 0]
    assert abs(got - (bessel_i(0, 0.6) - bessel_i(1, 0.6))) <= 1e-14
    with pytest.raises(ValueError):
        correction_block(one, 1, "bogus")


def test_correction_block_entry_formulas():
    inv = exp_symbol(FourierSymbol.from_coeffs({1: -0.2, -1: -0.2, 2: 0.1, -2: 0.1}))
    a0 = exp_symbol(FourierSymbol.from_coeffs({1: 0.2, -1: 0.2, 2: -0.1, -2: -0.1}))
    l = 4
    j, k = np.arange(l)[:, None], np.arange(l)[None, :]
    for variant, s, sign in (("plusH", 1, 1), ("minusH", 1, -1), ("minusHt", 2, -1), ("plusHt", 0, 1)):
        ref = inv.coef(j - k) + sign * inv.coef(j + k + s)
        np.testing.assert_allclose(correction_block(a0, l, variant), ref, atol=1e-14)


def test_matrix_to_csv():
    text = matrix_to_csv(np.array([[1 + 2j, 0], [3, -1j]]))
    rows = [[float(v) for v in line.split(",")] for line in text.splitlines()]
    assert rows == [[1.0, 2.0, 0.0, 0.0], [3.0, 0.0, 0.0, -1.0]]
