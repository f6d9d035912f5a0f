"""Exact finite-N identities and asymptotic formulas for Toeplitz+Hankel determinants.

Every check returns a :class:`~toeplitz_hankel.reports.VerificationReport`
whose two sides are compared in log/phase space.
"""
from __future__ import annotations

import numpy as np

from .constants import case_constants, szego_constants
from .determinants import LogDet, _wrap, det_lu, fredholm_det
from .errors import NoConvergence, NotEven, UnsupportedCase
from .operators import (
    correction_block,
    k_symbol,
    m_section,
    shifted_section,
    toeplitz_section,
)
from .reports import VerificationReport
from .symbol import (
    factor_even_plus,
    factor_minus_even,
    flip,
    inverse_symbol,
    log_symbol,
    max_degree,
    multiply,
)

__all__ = [
    "EXACT_TOL",
    "ASYMPTOTIC_TOL",
    "verify_bogc_even",
    "verify_bogc_general",
    "general_k_block",
    "verify_szego",
    "szego_gate",
    "shifted_case",
    "predict_shifted",
]

EXACT_TOL = 1e-10
ASYMPTOTIC_TOL = 1e-8
SHIFTED_TOL = 1e-7


def _exp_logdet(z):
    """LogDet of ``exp(z)`` for a complex exponent ``z``."""
    z = complex(z)
    return LogDet(z.real, _wrap(z.imag))


def _report(command, lhs, rhs, tol, params, notes=""):
    rel = lhs.rel_err(rhs)
    params = dict(params, tolerance=tol)
    return VerificationReport(command, lhs, rhs, rel, bool(rel <= tol), params, notes)


def verify_bogc_even(a, N, r, tol=EXACT_TOL, fredholm_tol=1e-14):
    """Check ``det P_N M(a) P_N = G^N F^[a] det(I + Q_N K Q_N)`` for an even symbol.

    The left side is a dense LU determinant; the right side combines the
    closed-form constants with the truncated Fredholm determinant of the
    Hankel-type operator ``K``.
    """
    if not a.is_even():
        raise NotEven("verify_bogc_even requires an even symbol")
    lhs = det_lu(m_section(a, N, r))
    b = log_symbol(a)
    const = szego_constants(a, r, b=b)
    fred = fredholm_det(a, r, N, tol=fredholm_tol, c=k_symbol(a))
    rhs = _exp_logdet(N * const.log_g + const.log_f_hat) * LogDet.from_complex(fred.value)
    params = {
        "N": N,
        "realization": str(r),
        "truncation": fred.truncation,
        "tail_estimate": fred.tail_estimate,
        "fredholm": fred.value,
    }
    return _report("bogc", lhs, rhs, tol, params)


def _general_factors(a):
    """Wiener-Hopf type factors ``(a_plus, a_minus)`` of ``a = a_minus * a_plus``."""
    fme = factor_minus_even(a)
    a_plus = factor_even_plus(fme.a_zero).a_plus
    a_minus = multiply(fme.a_minus, flip(a_plus))
    return a_plus, a_minus


def general_k_block(a, r, N, size, pad=None):
    """Block ``[N, N+size)`` of ``K = M(a_- a_+^{-1} a~_+^{-1}) T(a_+ a~_+ a_-^{-1}) - I``.

    The product is formed on a section padded by the symbol degrees, so the
    crop is exact up to the truncation of the symbols themselves.
    """
    a_plus, a_minus = _general_factors(a)
    inv_plus = inverse_symbol(a_plus)
    left = multiply(multiply(a_minus, inv_plus), flip(inv_plus))
    right = multiply(multiply(a_plus, flip(a_plus)), inverse_symbol(a_minus))
    if pad is None:
        pad = max(left.degree, right.degree) + 2
    n = N + size + pad
    prod = m_section(left, n, r) @ toeplitz_section(right, n)
    prod -= np.eye(n)
    return prod[N:N + size, N:N + size]


def verify_bogc_general(a, N, r, tol=1e-9, trunc_tol=1e-14, start=32):
    """Check ``det P_N M(a) P_N = G^N E[a] F[a] det(I + Q_N K Q_N)`` for a general symbol.

    ``K`` is materialized from its defining operator product.  The block size
    doubles until the Fredholm determinant moves by less than ``trunc_tol``.
    """
    lhs = det_lu(m_section(a, N, r))
    const = szego_constants(a, r)
    size, prev = start, None
    while True:
        value = det_lu(np.eye(size) + general_k_block(a, r, N, size)).value
        if prev is not None and abs(value - prev) <= trunc_tol * max(1.0, abs(value)):
            break
        prev = value
        size *= 2
        if size > max_degree():
            raise NoConvergence("general K block did not stabilize")
    rhs = _exp_logdet(N * const.log_g + const.log_e + const.log_f) * LogDet.from_complex(value)
    params = {"N": N, "realization": str(r), "truncation": size, "fredholm": value}
    return _report("bogc", lhs, rhs, tol, params, notes="general symbol")


def szego_gate(rel_errs, tol):
    """Monotone-decrease gate: last error below ``tol`` and below the first."""
    return bool(rel_errs[-1] <= tol and rel_errs[-1] < rel_errs[0]) or all(e == 0 for e in rel_errs)


def verify_szego(a, r, N_list, tol=ASYMPTOTIC_TOL):
    """Compare ``det P_N M(a) P_N`` with ``G^N E^[a]`` over ``N_list``.

    Each report's ``passed`` carries the list-level gate (:func:`szego_gate`);
    the per-N comparison is in ``rel_err``.
    """
    N_list = list(N_list)
    if any(n2 <= n1 for n1, n2 in zip(N_list, N_list[1:])):
        raise ValueError("N_list must be strictly increasing")
    const = szego_constants(a, r)
    out = []
    for N in N_list:
        lhs = det_lu(m_section(a, N, r))
        rhs = _exp_logdet(N * const.log_g + const.log_e_hat)
        out.append(VerificationReport(
            "szego", lhs, rhs, lhs.rel_err(rhs), None,
            {"N": N, "realization": str(r), "tolerance": tol},
        ))
    gate = szego_gate([rep.rel_err for rep in out], tol)
    for rep in out:
        rep.passed = gate
    return out


def shifted_case(k, sign, N):
    """Theorem case for ``T(a) +- H(a t^k)``: ``(case, l, variant)``.

    Raises
    ------
    UnsupportedCase
        For combinations the theorem does not cover.
    """
    if k <= -2 and k % 2 == 0:
        return 1, -k // 2, "plusH" if sign > 0 else "minusH"
    if sign < 0 and k <= -3 and k % 2 == 1:
        return 2, (-1 - k) // 2, "minusHt"
    if sign > 0 and k <= -1 and k % 2 == 1:
        return 3, (1 - k) // 2, "plusHt"
    if (sign > 0 and 2 <= k <= N) or (sign < 0 and 1 <= k <= N):
        return 4, 0, None
    if k == 0:
        raise UnsupportedCase("k = 0 is realization I/II; use verify_szego")
    raise UnsupportedCase(f"(k={k}, sign={'+' if sign > 0 else '-'}, N={N}) is outside theorem scope")


def predict_shifted(a, k, sign, N, convention="from_n0", tol=SHIFTED_TOL):
    """Dense determinant of ``P_N (T(a) +- H(a t^k)) P_N`` against the theorem's prediction.

    Cases 1-3 predict ``G^{N+l} E * det(l x l correction)``; case 4 predicts an
    exact zero.  Combinations outside the theorem give a report with
    ``passed = None``.
    """
    lhs = det_lu(shifted_section(a, N, k, sign))
    params = {"N": N, "k": k, "sign": sign, "realization": "Shifted", "convention": convention}
    try:
        case, l, variant = shifted_case(k, sign, N)
    except UnsupportedCase as exc:
        return VerificationReport("shifted", lhs, LogDet(float("nan"), 0.0), float("nan"), None,
                                  dict(params, tolerance=tol), f"outside theorem scope: {exc}")
    params.update(case=case, l=l)
    if case == 4:
        rhs = LogDet.zero()
        rel = lhs.rel_err(rhs)
        return VerificationReport("shifted", lhs, rhs, rel, bool(lhs.zero_flag),
                                  dict(params, tolerance=tol), "exact zero")
    b = log_symbol(a)
    cc = case_constants(a, convention, b=b)
    log_e = {1: cc.log_e1(sign), 2: cc.log_e2, 3: cc.log_e3}[case]
    a_zero = factor_minus_even(a).a_zero
    corr = det_lu(correction_block(a_zero, l, variant))
    rhs = _exp_logdet((N + l) * b.coef(0) + log_e) * corr
    return _report("shifted", lhs, rhs, tol, params)
