"""Determinants of dense complex matrices and truncated Fredholm determinants."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NonSquare
from .operators import k_operator_block, k_symbol
from .symbol import max_degree

__all__ = ["LogDet", "FredholmResult", "det_lu", "fredholm_det", "fredholm_tail"]

ZERO_PIVOT_TOL = 1e-13
_EPS = np.finfo(float).eps


def _wrap(phase):
    """Reduce an angle to (-pi, pi]."""
    w = math.remainder(phase, 2 * math.pi)
    return math.pi if w == -math.pi else w


@dataclass(frozen=True)
class LogDet:
    """A determinant held as ``exp(log_abs) * exp(i * phase)``.

    ``zero_flag`` marks a structurally singular matrix; then ``log_abs`` is ``-inf``.
    """

    log_abs: float
    phase: float
    zero_flag: bool = False

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        if z == 0:
            return cls.zero()
        return cls(math.log(abs(z)), _wrap(math.atan2(z.imag, z.real)))

    @classmethod
    def zero(cls):
        return cls(-math.inf, 0.0, True)

    @property
    def value(self):
        if self.zero_flag:
            return 0j
        return complex(math.exp(self.log_abs) * np.exp(1j * self.phase))

    def __mul__(self, other):
        if not isinstance(other, LogDet):
            other = LogDet.from_complex(other)
        if self.zero_flag or other.zero_flag:
            return LogDet.zero()
        return LogDet(self.log_abs + other.log_abs, _wrap(self.phase + other.phase))

    __rmul__ = __mul__

    def __pow__(self, n):
        if self.zero_flag:
            return LogDet.zero() if n > 0 else LogDet(0.0, 0.0)
        return LogDet(self.log_abs * n, _wrap(self.phase * n))

    def rel_err(self, other):
        """``|self / other - 1|`` computed in log/phase space."""
        if self.zero_flag or other.zero_flag:
            return 0.0 if (self.zero_flag and other.zero_flag) else math.inf
        dphase = _wrap(self.phase - other.phase)
        return abs(np.expm1(complex(self.log_abs - other.log_abs, dphase)))


def det_lu(m, zero_tol=ZERO_PIVOT_TOL):
    """Determinant by LU factorization with partial pivoting.

    Pivots are accumulated in log/phase form.  ``zero_flag`` is raised when a
    pivot falls below ``zero_tol`` times the largest row norm of ``m``; with
    exact column coincidences the elimination leaves a pivot at roundoff level.

    Raises
    ------
    NonSquare
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"determinant of a {a.shape} array")
    n = a.shape[0]
    if n == 0:
        return LogDet(0.0, 0.0)
    scale = float(np.max(np.linalg.norm(a, axis=1)))
    if scale == 0.0:
        return LogDet.zero()
    threshold = zero_tol * scale
    logs, phase = [], 0.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        piv = a[p, k]
        if abs(piv) <= threshold:
            return LogDet.zero()
        if p != k:
            a[[k, p], k:] = a[[p, k], k:]
            phase += math.pi
        logs.append(math.log(abs(piv)))
        phase += math.atan2(piv.imag, piv.real)
        if k + 1 < n:
            col = a[k + 1:, k] / piv
            a[k + 1:, k + 1:] -= np.outer(col, a[k, k + 1:])
    return LogDet(math.fsum(logs), _wrap(phase))


@dataclass(frozen=True)
class FredholmResult:
    """``det(I + Q_N K Q_N)`` truncated to ``truncation`` rows and columns."""

    value: complex
    truncation: int
    tail_estimate: float


def fredholm_tail(c, degree):
    """Weighted tail ``sum_{|n| >= degree} (1 + |n|) |c_n|``."""
    idx = c.indices
    mask = np.abs(idx) >= degree
    return float(np.sum((1 + np.abs(idx[mask])) * np.abs(c.data[mask])))


def fredholm_det(a, r, N, tol=1e-14, start=32, c=None):
    """Truncated ``det(I + Q_N K Q_N)`` for the K of an even symbol ``a``.

    The block ``[N, N+M)`` is grown from ``M = start`` by doubling until the
    weighted tail of ``c = a_+^{-1} flip(a_+)`` past the first omitted Hankel
    index ``2N + M`` is below ``tol``.
    """
    if c is None:
        c = k_symbol(a)
    cap = max_degree()
    size = start
    while True:
        tail = fredholm_tail(c, 2 * N + size)
        if tail < tol:
            break
        size *= 2
        if size > cap:
            raise NoConvergence(f"Fredholm block exceeded {cap} before tail < {tol:g}")
    block = k_operator_block(a, r, N, size, c=c)
    value = det_lu(np.eye(size) + block).value
    # roundoff floor so that doubling the block stays within 10x the estimate
    floor = 16 * _EPS * size * (1.0 + float(np.linalg.norm(block)))
    return FredholmResult(value, size, tail + floor)
