"""Dense finite sections of Toeplitz, Hankel and Toeplitz+Hankel operators.

All constructors return ``complex`` ndarrays whose entries are read directly
from the coefficient table of the symbol.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotEven
from .symbol import FourierSymbol, factor_even_plus, flip, inverse_symbol, multiply

__all__ = [
    "REALIZATIONS",
    "Realization",
    "I", "II", "III", "IV",
    "toeplitz_section",
    "hankel_section",
    "m_section",
    "oplus_section",
    "shifted_section",
    "k_symbol",
    "k_operator_block",
    "correction_block",
    "matrix_to_csv",
]

_TAGS = ("I", "II", "III", "IV", "Shifted")


@dataclass(frozen=True)
class Realization:
    """One of the four compatible-pair realizations, or a shifted ``T(a) +- H(a t^k)``.

    ``k`` and ``sign`` are set exactly when ``tag == "Shifted"``.
    """

    tag: str
    k: int | None = None
    sign: int | None = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown realization {self.tag!r}")
        shifted = self.tag == "Shifted"
        if shifted != (self.k is not None and self.sign is not None):
            raise ValueError("k and sign are required for Shifted and forbidden otherwise")
        if shifted and self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def shifted(cls, k, sign):
        return cls("Shifted", int(k), int(sign))

    @classmethod
    def parse(cls, text):
        text = str(text).strip().upper()
        if text not in _TAGS[:4]:
            raise ValueError(f"unknown realization {text!r}; expected one of I, II, III, IV")
        return cls(text)

    def __str__(self):
        if self.tag == "Shifted":
            return f"Shifted(k={self.k},sign={'+' if self.sign > 0 else '-'})"
        return self.tag


I, II, III, IV = (Realization(t) for t in _TAGS[:4])
REALIZATIONS = (I, II, III, IV)


def _index_grid(n, offset=0):
    j = np.arange(offset, offset + n)
    return j[:, None], j[None, :]


def toeplitz_section(a, n):
    """``(a_{j-k})`` for ``0 <= j, k < n``."""
    j, k = _index_grid(n)
    return a.coef(j - k)


def hankel_section(a, n):
    """``(a_{j+k+1})`` for ``0 <= j, k < n``."""
    j, k = _index_grid(n)
    return a.coef(j + k + 1)


def _hankel_shift(r):
    """Index shift ``s`` and sign so that the Hankel part of ``M(a)`` is ``sign * a_{j+k+s}``."""
    return {"I": (1, 1.0), "II": (1, -1.0), "III": (2, -1.0), "IV": (0, 1.0)}[r.tag]


def m_section(a, n, r):
    """``P_n M(a) P_n`` for realizations I-IV (and Shifted, for convenience).

    I: ``a_{j-k} + a_{j+k+1}``; II: ``a_{j-k} - a_{j+k+1}``;
    III: ``a_{j-k} - a_{j+k+2}``; IV: ``a_{j-k} + a_{j+k}`` for ``k >= 1``.
    """
    if r.tag == "Shifted":
        return shifted_section(a, n, r.k, r.sign)
    j, k = _index_grid(n)
    s, sign = _hankel_shift(r)
    hank = a.coef(j + k + s)
    if r.tag == "IV":
        hank[:, :1] = 0.0
    return a.coef(j - k) + sign * hank


def oplus_section(a, n):
    """``(a_{j-k} + a_{j+k})``, the matrix of the orthogonal-group average; ``a`` must be even."""
    if not a.is_even():
        raise NotEven("oplus_section requires an even symbol")
    j, k = _index_grid(n)
    return a.coef(j - k) + a.coef(j + k)


def shifted_section(a, n, k, sign):
    """``(a_{i-j} + sign * a_{i+j+1-k})``, the finite section of ``T(a) +- H(a t^k)``."""
    i, j = _index_grid(n)
    return a.coef(i - j) + sign * a.coef(i + j + 1 - k)


def k_symbol(a):
    """``c = a_plus^{-1} * flip(a_plus)`` for an even symbol ``a``."""
    fac = factor_even_plus(a)
    return multiply(inverse_symbol(fac.a_plus), flip(fac.a_plus))


def k_operator_block(a, r, offset, size, c=None):
    """Block of the operator ``K = M(a_+^{-1}) T(a_+) - I`` on indices ``[offset, offset+size)``.

    I: ``H(c)``, II: ``-H(c)``, III: ``-H(t^{-1} c)``, IV: ``H(t c)`` with
    ``c = a_+^{-1} flip(a_+)``.  The second term of the IV form lives in
    column 0 only, so ``offset >= 1`` is required there.

    ``c`` may be passed to skip the factorization.
    """
    if r.tag == "IV" and offset < 1:
        raise ValueError("realization IV block needs offset >= 1")
    if r.tag == "Shifted":
        raise ValueError("K is defined for realizations I-IV only")
    if c is None:
        c = k_symbol(a)
    j, k = _index_grid(size, offset)
    s, sign = _hankel_shift(r)
    return sign * c.coef(j + k + s)


_VARIANTS = {"plusH": (1, 1.0), "minusH": (1, -1.0), "minusHt": (2, -1.0), "plusHt": (0, 1.0)}


def correction_block(a_zero, l, variant, a_zero_inv=None):
    """``l x l`` section of ``T(a_0^{-1}) +- H(a_0^{-1} t^m)``.

    variant ``plusH``/``minusH``: ``m = 0``; ``minusHt``: ``-`` with ``m = -1``;
    ``plusHt``: ``+`` with ``m = +1``.
    """
    if variant not in _VARIANTS:
        raise ValueError(f"unknown correction variant {variant!r}")
    inv = a_zero_inv if a_zero_inv is not None else inverse_symbol(a_zero)
    s, sign = _VARIANTS[variant]
    j, k = _index_grid(l)
    return inv.coef(j - k) + sign * inv.coef(j + k + s)


def matrix_to_csv(m):
    """Row-major CSV text with ``re,im`` pairs, for debugging dumps."""
    rows = []
    for row in np.asarray(m):
        rows.append(",".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in row.astype(complex)))
    return "\n".join(rows) + "\n"
