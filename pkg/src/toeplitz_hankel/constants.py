"""Closed-form Szego-type constants computed from the Fourier coefficients of ``log a``.

All constants are carried as their logarithms (``log_*`` fields); the
exponentiated values are exposed as properties.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .symbol import log_symbol

__all__ = [
    "Traces",
    "SzegoConstants",
    "CaseConstants",
    "traces",
    "trace_m_minus_t",
    "szego_constants",
    "case_constants",
]

CONVENTIONS = ("from_n1", "from_n0")


@dataclass(frozen=True)
class Traces:
    h_odd: complex    # sum_{n>=0} b_{2n+1}
    h_even: complex   # sum_{n>=1} b_{2n}
    h_sq: complex     # sum_{n>=1} n b_n^2
    h_cross: complex  # sum_{n>=1} n b_n b_{-n}


def traces(b):
    """Trace sums of Hankel operators built from ``b = log a``."""
    pos = np.arange(1, max(b.hi, 0) + 1)
    bp = b.coef(pos)
    bm = b.coef(-pos)
    return Traces(
        h_odd=complex(np.sum(bp[0::2])),
        h_even=complex(np.sum(bp[1::2])),
        h_sq=complex(np.sum(pos * bp * bp)),
        h_cross=complex(np.sum(pos * bp * bm)),
    )


def _trace_from(tr, r):
    return {
        "I": tr.h_odd,
        "II": -tr.h_odd,
        "III": -tr.h_even,
        "IV": tr.h_even,
    }[r.tag]


def trace_m_minus_t(b, r):
    """``trace(M(b) - T(b))`` for realizations I-IV."""
    if r.tag == "Shifted":
        raise ValueError("trace(M(b) - T(b)) is defined for realizations I-IV only")
    return _trace_from(traces(b), r)


@dataclass(frozen=True)
class SzegoConstants:
    """``G``, ``E``, ``F``, ``F^`` (even symbols only) and ``E^`` for one realization."""

    log_g: complex
    log_e: complex
    log_f: complex
    log_f_hat: complex | None
    log_e_hat: complex
    traces: Traces

    @property
    def g(self):
        return cmath.exp(self.log_g)

    @property
    def e(self):
        return cmath.exp(self.log_e)

    @property
    def f(self):
        return cmath.exp(self.log_f)

    @property
    def f_hat(self):
        return None if self.log_f_hat is None else cmath.exp(self.log_f_hat)

    @property
    def e_hat(self):
        return cmath.exp(self.log_e_hat)

    def as_dict(self):
        return {"G": self.g, "E": self.e, "F": self.f, "F_hat": self.f_hat, "E_hat": self.e_hat}


def szego_constants(a, r, b=None):
    """Constants of ``a`` for realization ``r``.

    ``b`` (the logarithm of ``a``) may be supplied to skip :func:`log_symbol`.
    ``log_f_hat`` is present only when ``a`` is even.
    """
    if b is None:
        b = log_symbol(a)
    tr = traces(b)
    tm = _trace_from(tr, r)
    log_f = tm - tr.h_sq / 2
    log_f_hat = tm + tr.h_sq / 2 if a.is_even() else None
    return SzegoConstants(
        log_g=b.coef(0),
        log_e=tr.h_cross,
        log_f=log_f,
        log_f_hat=log_f_hat,
        log_e_hat=log_f + tr.h_cross,
        traces=tr,
    )


@dataclass(frozen=True)
class CaseConstants:
    """Constants ``E_{1,+}``, ``E_{1,-}``, ``E_2``, ``E_3`` of the shifted-symbol asymptotics."""

    log_e1_plus: complex
    log_e1_minus: complex
    log_e2: complex
    log_e3: complex
    index_convention: str

    @property
    def e1_plus(self):
        return cmath.exp(self.log_e1_plus)

    @property
    def e1_minus(self):
        return cmath.exp(self.log_e1_minus)

    @property
    def e2(self):
        return cmath.exp(self.log_e2)

    @property
    def e3(self):
        return cmath.exp(self.log_e3)

    def log_e1(self, sign):
        return self.log_e1_plus if sign > 0 else self.log_e1_minus


def case_constants(a, convention="from_n0", b=None):
    """Shifted-symbol constants.

    The odd sum ``sum b_{2n+1}`` in ``E_{1,+-}`` starts at ``n = 1`` (``b_3``)
    under ``"from_n1"`` and at ``n = 0`` (``b_1``) under ``"from_n0"``.  Only
    ``"from_n0"`` reproduces the dense determinants.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown index convention {convention!r}")
    if b is None:
        b = log_symbol(a)
    tr = traces(b)
    odd = tr.h_odd - (b.coef(1) if convention == "from_n1" else 0.0)
    quad = -tr.h_sq / 2 + tr.h_cross
    return CaseConstants(
        log_e1_plus=odd + quad,
        log_e1_minus=-odd + quad,
        log_e2=-tr.h_even + quad,
        log_e3=-np.log(2.0) + tr.h_even + quad,
        index_convention=convention,
    )
