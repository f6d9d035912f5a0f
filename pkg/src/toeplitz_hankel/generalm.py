"""Compatible pairs generated by a perturbation vector ``x``.

The operator is fixed on trigonometric polynomials by

* ``M(t^{-n}) = T(t^{-n})`` for ``n >= 0``;
* ``M((t + 1/t)^n) = (T(t + 1/t) + e_0 x^T)^n`` for ``n >= 1``.

Every trigonometric polynomial is a unique combination of ``t^{-n}`` and
``(t + 1/t)^n`` (:func:`basis_convert`), which extends ``M`` linearly.
Semi-infinite products are formed on padded sections and cropped, which is
exact because every factor is banded plus a finite-column rank-one term.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import WindowTooSmall
from .operators import toeplitz_section
from .symbol import FourierSymbol, multiply

__all__ = [
    "PerturbationVector",
    "PolyInCanonicalBasis",
    "basis_convert",
    "reconstruct",
    "m_general_section",
    "k_of_tn",
    "check_compatibility",
    "random_trig_poly",
]


@dataclass(frozen=True)
class PerturbationVector:
    """Finitely supported ``x``; row 0 of ``K(t) = M(t) - T(t)``."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(complex(v) for v in self.entries))

    @property
    def support_bound(self):
        nz = [i for i, v in enumerate(self.entries) if v != 0]
        return nz[-1] if nz else 0

    def dense(self, n):
        out = np.zeros(n, dtype=complex)
        m = min(n, len(self.entries))
        out[:m] = self.entries[:m]
        return out

    @classmethod
    def unit(cls, j, value=1.0):
        return cls((0.0,) * j + (value,))

    @classmethod
    def zero(cls):
        return cls(())

    def to_json(self):
        return json.dumps({"x": [[v.real, v.imag] for v in self.entries]})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        return cls(tuple(complex(re, im) for re, im in data["x"]))


@dataclass(frozen=True)
class PolyInCanonicalBasis:
    """``p = sum_{n=0}^m c[n] (t + 1/t)^n + sum_{n=1}^m d[n] t^{-n}`` (``d[0]`` unused)."""

    c: np.ndarray
    d: np.ndarray


def _binomial_power(n):
    """Coefficients of ``(t + 1/t)^n`` on indices ``-n, -n+2, ..., n`` as a symbol."""
    return FourierSymbol.from_coeffs({n - 2 * i: float(comb(n, i)) for i in range(n + 1)})


def basis_convert(p):
    """Triangular elimination of ``p`` into the ``(t+1/t)^n`` / ``t^{-n}`` basis."""
    m = max(p.hi, -p.lo, 0)
    rest = np.array(p.coef(np.arange(-m, m + 1)), dtype=complex)  # index n at rest[n + m]
    c = np.zeros(m + 1, dtype=complex)
    for n in range(m, 0, -1):
        c[n] = rest[n + m]
        if c[n] != 0:
            for i in range(n + 1):
                rest[n - 2 * i + m] -= c[n] * comb(n, i)
    c[0] = rest[m]
    d = np.zeros(m + 1, dtype=complex)
    d[1:] = rest[:m][::-1]
    return PolyInCanonicalBasis(c, d)


def reconstruct(basis):
    """Inverse of :func:`basis_convert`."""
    total = FourierSymbol.constant(0.0)
    for n, cn in enumerate(basis.c):
        if cn != 0:
            total = total + _binomial_power(n) * complex(cn)
    for n, dn in enumerate(basis.d):
        if n and dn != 0:
            total = total + FourierSymbol.monomial(-n, dn)
    return total


def _generator(x, size):
    """Section of ``T(t + 1/t) + e_0 x^T``."""
    g = np.eye(size, k=1, dtype=complex) + np.eye(size, k=-1, dtype=complex)
    g[0, :] += x.dense(size)
    return g


def m_general_section(x, p, N):
    """``P_N M(p) P_N`` for a trigonometric polynomial ``p``.

    Powers of the generator are accumulated on a section padded by
    ``deg * (1 + support_bound)`` and cropped to ``N x N``.
    """
    basis = basis_convert(p)
    deg = len(basis.c) - 1
    s = x.support_bound
    if N < 1 or (s >= N and any(x.entries[N:])):
        raise WindowTooSmall(f"N={N} must exceed the support bound {s} of x")
    size = N + deg * (1 + s) + 1
    gen = _generator(x, size)
    acc = np.zeros((size, size), dtype=complex)
    power = np.eye(size, dtype=complex)
    for n in range(deg + 1):
        if n:
            power = power @ gen
        if basis.c[n] != 0:
            acc += basis.c[n] * power
    out = acc[:N, :N]
    for n in range(1, deg + 1):
        if basis.d[n] != 0:
            out = out + basis.d[n] * toeplitz_section(FourierSymbol.monomial(-n), N)
    return out


def k_of_tn(x, n, N):
    """``P_N K(t^n) P_N`` with ``K = M - T``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    tn = FourierSymbol.monomial(n)
    return m_general_section(x, tn, N) - toeplitz_section(tn, N)


def _span(*symbols):
    return sum(max(s.hi, -s.lo, 0) for s in symbols)


def check_compatibility(x, a, b, c, N):
    """Max-entry deviation of ``M(abc)`` from ``T(a) M(b) M(c)`` on the exact corner.

    ``a`` anti-analytic, ``c`` even, all trigonometric polynomials.  Only the
    leading ``N - (deg a + deg b + deg c)`` block is compared, where the
    semi-infinite products are fully captured by ``N x N`` sections.
    """
    if a.hi > 0:
        raise ValueError("a must be anti-analytic (no positive indices)")
    if not c.is_even():
        raise ValueError("c must be even")
    corner = N - _span(a, b, c)
    if corner < 1:
        raise WindowTooSmall(f"N={N} leaves no exact corner for total degree {_span(a, b, c)}")
    abc = multiply(multiply(a, b), c)
    left = m_general_section(x, abc, N)
    right = toeplitz_section(a, N) @ m_general_section(x, b, N) @ m_general_section(x, c, N)
    diff = (left - right)[:corner, :corner]
    return float(np.max(np.abs(diff)))


def random_trig_poly(rng, degree, kind="general"):
    """Random trigonometric polynomial of the requested ``kind``: general, minus (n <= 0) or even."""
    z = rng.standard_normal(2 * degree + 1) + 1j * rng.standard_normal(2 * degree + 1)
    idx = np.arange(-degree, degree + 1)
    if kind == "minus":
        z[idx > 0] = 0
    elif kind == "even":
        z = (z + z[::-1]) / 2
    elif kind != "general":
        raise ValueError(f"unknown kind {kind!r}")
    return FourierSymbol(z, -degree)
