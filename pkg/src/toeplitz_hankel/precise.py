"""Extended-precision evaluation of the Szego-type asymptotics.

For analytic symbols the asymptotic error ``det P_N M(a) P_N / (G^N E^) - 1``
falls below double-precision roundoff already at moderate ``N``.  When the
symbol is given through an exact trigonometric polynomial ``b = log a`` the
coefficients of ``a = exp(b)``, the dense determinant and the constants can all
be evaluated with mpmath at a working precision chosen large enough to resolve
the error itself.
"""
from __future__ import annotations

import math

import mpmath

from .determinants import LogDet
from .reports import VerificationReport

__all__ = ["exp_coefficients_mp", "szego_error_mp", "verify_szego_mp"]

MAX_DPS = 2000


def _mp_number(c):
    """Real coefficients stay real so that the elimination runs in mpf arithmetic."""
    return mpmath.mpf(c.real) if c.imag == 0 else mpmath.mpc(c.real, c.imag)


def _series_exp(g, length, cutoff):
    """Power series ``exp(sum_k g[k] z^k)`` (``g[0]`` ignored) until terms drop below ``cutoff``."""
    deg = max(g) if g else 0
    f = [mpmath.mpf(1)]
    n = 1
    while True:
        acc = mpmath.mpf(0)
        for k in range(1, min(n, deg) + 1):
            acc += k * g.get(k, 0) * f[n - k]
        f.append(acc / n)
        if n >= length and all(abs(x) < cutoff for x in f[-max(deg, 1):]):
            return f
        n += 1


def exp_coefficients_mp(b, window):
    """Coefficients ``a_n``, ``|n| <= window``, of ``a = exp(b)`` at the current mpmath precision.

    ``b`` is a :class:`~toeplitz_hankel.symbol.FourierSymbol` whose stored
    coefficients are taken as exact.
    """
    coeffs = {n: _mp_number(c) for n, c in b.coeffs.items()}
    cutoff = mpmath.mpf(10) ** (-(mpmath.mp.dps + 10))
    plus = _series_exp({n: c for n, c in coeffs.items() if n > 0}, window, cutoff)
    minus = _series_exp({-n: c for n, c in coeffs.items() if n < 0}, window, cutoff)
    scale = mpmath.exp(coeffs.get(0, mpmath.mpf(0)))
    out = {}
    for n in range(-window, window + 1):
        acc = mpmath.mpf(0)
        for m in range(max(0, n), len(plus)):
            if m - n >= len(minus):
                break
            acc += plus[m] * minus[m - n]
        out[n] = scale * acc
    return out


def _hankel_rule(tag):
    return {"I": (1, 1), "II": (1, -1), "III": (2, -1), "IV": (0, 1)}[tag]


def _m_section_mp(a, n, tag):
    s, sign = _hankel_rule(tag)
    zero = mpmath.mpf(0)
    rows = []
    for j in range(n):
        row = []
        for k in range(n):
            hank = a.get(j + k + s, zero) if (tag != "IV" or k >= 1) else zero
            row.append(a.get(j - k, zero) + sign * hank)
        rows.append(row)
    return rows


def _det_mp(rows):
    """Determinant by partial-pivoting elimination on nested lists of mpmath numbers."""
    a = [list(r) for r in rows]
    n = len(a)
    det = mpmath.mpf(1)
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if a[p][k] == 0:
            return mpmath.mpf(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        piv = a[k][k]
        det *= piv
        pivrow = a[k]
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                row = a[i]
                for j in range(k + 1, n):
                    row[j] -= f * pivrow[j]
    return det


def _log_e_hat_mp(b, tag):
    c = {n: _mp_number(v) for n, v in b.coeffs.items()}
    top = max(c) if c else 0
    zero = mpmath.mpf(0)
    h_odd = sum((c.get(n, 0) for n in range(1, top + 1, 2)), zero)
    h_even = sum((c.get(n, 0) for n in range(2, top + 1, 2)), zero)
    h_sq = sum((n * c.get(n, 0) ** 2 for n in range(1, top + 1)), zero)
    h_cross = sum((n * c.get(n, 0) * c.get(-n, 0) for n in range(1, top + 1)), zero)
    tm = {"I": h_odd, "II": -h_odd, "III": -h_even, "IV": h_even}[tag]
    return tm - h_sq / 2 + h_cross


def _to_logdet(z):
    if z == 0:
        return LogDet.zero()
    return LogDet(float(mpmath.log(abs(z))), float(mpmath.arg(z)))


def szego_error_mp(b, r, N, dps):
    """``(det, prediction, rel_err)`` at ``dps`` decimal digits."""
    with mpmath.workdps(dps):
        a = exp_coefficients_mp(b, 2 * N + 2)
        lhs = _det_mp(_m_section_mp(a, N, r.tag))
        rhs = mpmath.exp(N * _mp_number(b.coef(0)) + _log_e_hat_mp(b, r.tag))
        rel = abs(lhs / rhs - 1)
        return lhs, rhs, rel


def verify_szego_mp(b, r, N_list, tol=1e-8, dps=50):
    """Extended-precision counterpart of :func:`~toeplitz_hankel.identities.verify_szego`.

    ``b`` is the exact logarithm of the symbol.  The working precision doubles
    until the relative error sits at least 10 digits above the precision floor,
    so the reported errors are the asymptotic errors themselves.
    """
    from .identities import szego_gate

    N_list = list(N_list)
    if any(n2 <= n1 for n1, n2 in zip(N_list, N_list[1:])):
        raise ValueError("N_list must be strictly increasing")
    out = []
    prev = None
    for N in N_list:
        work = dps
        if prev is not None and prev[1] > 0:
            # errors decay roughly like rho^(N log N); extrapolate the digits needed
            digits = -math.log10(prev[1]) * (N / prev[0]) ** 1.3
            work = max(dps, int(digits) + 20)
        while True:
            lhs, rhs, rel = szego_error_mp(b, r, N, work)
            resolved = rel == 0 or rel > mpmath.mpf(10) ** (-(work - 10))
            if resolved or work >= MAX_DPS:
                break
            work *= 2
        rel_f = float(rel)
        prev = (N, rel_f)
        notes = f"mpmath dps={work}" + ("" if resolved else " (error below precision floor)")
        out.append(VerificationReport(
            "szego", _to_logdet(lhs), _to_logdet(rhs), rel_f, None,
            {"N": N, "realization": str(r), "tolerance": tol, "dps": work,
             "log10_rel_err": float(mpmath.log10(rel)) if rel else -math.inf},
            notes,
        ))
    gate = szego_gate([rep.rel_err for rep in out], tol)
    for rep in out:
        rep.passed = gate
    return out
