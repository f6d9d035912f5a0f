"""Truncated Laurent series on the unit circle.

A :class:`FourierSymbol` stores the Fourier coefficients ``a_n`` of a function
``a(t) = sum_n a_n t^n`` (``t = e^{i theta}``) over a finite degree window
``lo <= n <= hi`` with ``lo <= 0 <= hi``.  Transcendental operations (``exp``,
``log``) go through sampling on a uniform grid and an FFT, with the grid doubled
until the discarded tail drops below ``FFT_TAIL_TOL``.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from numbers import Number

import numpy as np

from .errors import DegreeCap, NearZero, NonzeroWinding, NotEven, SymbolSpecError

DEFAULT_TAIL_TOL = 1e-16
FFT_TAIL_TOL = 1e-14
NEAR_ZERO_TOL = 1e-10
EVEN_TOL = 1e-13
DEFAULT_MAX_DEGREE = 4096

__all__ = [
    "FourierSymbol",
    "FactorizationEvenPlus",
    "FactorizationMinusEven",
    "max_degree",
    "multiply",
    "flip",
    "log_symbol",
    "exp_symbol",
    "inverse_symbol",
    "decompose_plus_minus",
    "decompose_even_minus",
    "factor_even_plus",
    "factor_minus_even",
    "winding_number",
    "norm_fl11",
    "symbol_from_spec",
    "symbol_to_spec",
]


def max_degree():
    """Largest admissible window half-width (``TH_SZEGO_MAX_DEGREE`` overrides)."""
    value = os.environ.get("TH_SZEGO_MAX_DEGREE")
    return int(value) if value else DEFAULT_MAX_DEGREE


class FourierSymbol:
    """Immutable truncated Laurent series.

    Parameters
    ----------
    data : array_like
        Coefficients ``a_lo, a_lo+1, ..., a_hi``.
    lo : int
        Index of ``data[0]``.
    tail_tol : float
        Coefficients with magnitude below this are dropped.

    The stored window is trimmed to the outermost surviving coefficients but
    always contains index 0.
    """

    __slots__ = ("_data", "_lo", "tail_tol")

    def __init__(self, data, lo=0, tail_tol=DEFAULT_TAIL_TOL):
        arr = np.array(data, dtype=complex).ravel()
        if not np.all(np.isfinite(arr)):
            raise ValueError("symbol coefficients must be finite")
        arr[np.abs(arr) < tail_tol] = 0.0
        nz = np.flatnonzero(arr)
        if nz.size == 0:
            arr, lo = np.zeros(1, dtype=complex), 0
        else:
            first, last = lo + nz[0], lo + nz[-1]
            new_lo, new_hi = min(first, 0), max(last, 0)
            out = np.zeros(new_hi - new_lo + 1, dtype=complex)
            out[first - new_lo:last - new_lo + 1] = arr[nz[0]:nz[-1] + 1]
            arr, lo = out, new_lo
        cap = max_degree()
        if -lo > cap or lo + arr.size - 1 > cap:
            raise DegreeCap(f"symbol window [{lo}, {lo + arr.size - 1}] exceeds max degree {cap}")
        arr.setflags(write=False)
        self._data = arr
        self._lo = int(lo)
        self.tail_tol = tail_tol

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs, tail_tol=DEFAULT_TAIL_TOL):
        """Build from a mapping ``{n: a_n}``."""
        if not coeffs:
            return cls.constant(0.0)
        idx = [int(n) for n in coeffs]
        lo, hi = min(min(idx), 0), max(max(idx), 0)
        data = np.zeros(hi - lo + 1, dtype=complex)
        for n, value in coeffs.items():
            data[int(n) - lo] += value
        return cls(data, lo, tail_tol)

    @classmethod
    def constant(cls, c):
        return cls([c], 0)

    @classmethod
    def monomial(cls, n, c=1.0):
        """``c * t**n``."""
        return cls.from_coeffs({n: c})

    # -- inspection -------------------------------------------------------
    @property
    def lo(self):
        return self._lo

    @property
    def hi(self):
        return self._lo + self._data.size - 1

    @property
    def data(self):
        return self._data

    @property
    def indices(self):
        return np.arange(self.lo, self.hi + 1)

    @property
    def coeffs(self):
        return {int(n): complex(c) for n, c in zip(self.indices, self._data) if c != 0}

    def coef(self, n):
        """Coefficient ``a_n`` (zero outside the window); ``n`` may be an array."""
        n = np.asarray(n)
        pos = n - self._lo
        inside = (pos >= 0) & (pos < self._data.size)
        out = np.zeros(n.shape, dtype=complex)
        out[inside] = self._data[pos[inside]]
        return out if out.ndim else complex(out)

    def __getitem__(self, n):
        return self.coef(n)

    @property
    def degree(self):
        """Half-width ``max(-lo, hi)``."""
        return max(-self.lo, self.hi)

    def is_even(self, tol=EVEN_TOL):
        return norm_fl11(self - self.flip()) <= tol * max(1.0, norm_fl11(self))

    def __repr__(self):
        terms = ", ".join(f"{n}: {c:.6g}" for n, c in self.coeffs.items())
        return f"FourierSymbol({{{terms}}})"

    # -- evaluation -------------------------------------------------------
    def __call__(self, theta):
        """Evaluate ``a(e^{i theta})``."""
        theta = np.asarray(theta, dtype=float)
        phases = np.exp(1j * np.multiply.outer(theta, self.indices))
        return phases @ self._data

    def on_grid(self, m):
        """Values at ``theta_j = 2 pi j / m``; requires ``m`` above the window width."""
        if m <= self.hi - self.lo:
            raise ValueError("grid too coarse for symbol window (aliasing)")
        buf = np.zeros(m, dtype=complex)
        buf[self.indices % m] = self._data
        return np.fft.ifft(buf) * m

    # -- algebra ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FourierSymbol):
            return other
        if isinstance(other, Number):
            return FourierSymbol.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        idx = np.arange(lo, hi + 1)
        return FourierSymbol(self.coef(idx) + other.coef(idx), lo)

    __radd__ = __add__

    def __neg__(self):
        return FourierSymbol(-self._data, self.lo)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return FourierSymbol(self._data * other, self.lo)
        if isinstance(other, FourierSymbol):
            return multiply(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return FourierSymbol(self._data / other, self.lo)
        return NotImplemented

    def shift(self, k):
        """Multiply by ``t**k``."""
        return FourierSymbol(self._data, self.lo + k)

    def flip(self):
        return flip(self)

    def reflect(self):
        """The symbol ``a(-t)``, i.e. coefficients ``(-1)^n a_n``."""
        signs = np.where(self.indices % 2 == 0, 1.0, -1.0)
        return FourierSymbol(self._data * signs, self.lo)

    def conj(self):
        """Pointwise complex conjugate on the circle: coefficients ``conj(a_{-n})``."""
        return FourierSymbol(np.conj(self._data[::-1]), -self.hi)

    def plus_part(self):
        return decompose_plus_minus(self)[0]

    def minus_part(self):
        return decompose_plus_minus(self)[1]

    def norm_fl11(self):
        return norm_fl11(self)


@dataclass(frozen=True)
class FactorizationEvenPlus:
    """``symbol = a_plus * flip(a_plus)`` for an even symbol."""

    a_plus: FourierSymbol
    symbol: FourierSymbol


@dataclass(frozen=True)
class FactorizationMinusEven:
    """``a = a_minus * a_zero`` with ``a_minus`` anti-analytic, ``[a_minus]_0 = 1``, ``a_zero`` even."""

    a_minus: FourierSymbol
    a_zero: FourierSymbol


def multiply(a, b):
    """Laurent product: ``(ab)_n = sum_k a_k b_{n-k}``."""
    return FourierSymbol(np.convolve(a.data, b.data), a.lo + b.lo)


def flip(a):
    """``a~(t) = a(1/t)``."""
    return FourierSymbol(a.data[::-1], -a.hi)


def norm_fl11(a):
    """Weighted norm ``sum (1 + |n|) |a_n|``."""
    return float(np.sum((1 + np.abs(a.indices)) * np.abs(a.data)))


def _initial_grid(a):
    return 1 << max(3, math.ceil(math.log2(8 * (a.hi - a.lo + 1))))


def _coeffs_from_grid(values, keep):
    """FFT coefficients ``c_n`` for ``|n| < keep`` and the max modulus discarded."""
    m = values.size
    c = np.fft.fft(values) / m
    n = np.fft.fftfreq(m, d=1.0 / m).astype(int)
    inner = np.abs(n) < keep
    tail = float(np.max(np.abs(c[~inner]))) if np.any(~inner) else 0.0
    order = np.argsort(n[inner])
    return c[inner][order], int(n[inner][order][0]), tail


def _sampled_transform(a, pointwise, grid_size):
    """Apply ``pointwise`` to grid samples of ``a`` and transform back, refining the grid."""
    m = grid_size or _initial_grid(a)
    cap = max_degree()
    while True:
        m = max(m, _initial_grid(a))
        values = pointwise(a.on_grid(m))
        data, lo, tail = _coeffs_from_grid(values, m // 4)
        scale = float(np.max(np.abs(data)))
        if tail < FFT_TAIL_TOL * max(1.0, scale):
            break
        m *= 2
        if m // 4 > cap:
            raise DegreeCap(f"coefficients do not decay below {FFT_TAIL_TOL:g} within degree {cap}")
    floor = 4 * np.finfo(float).eps * scale
    data = np.where(np.abs(data) < floor, 0.0, data)
    return FourierSymbol(data, lo, a.tail_tol)


def _continuous_log(values):
    """Log with unwrapped argument plus the winding number of the closed loop."""
    mod = np.abs(values)
    if mod.min() < NEAR_ZERO_TOL:
        raise NearZero(f"symbol modulus {mod.min():.3g} below {NEAR_ZERO_TOL:g} on the grid")
    phase = np.unwrap(np.angle(np.append(values, values[0])))
    winding = int(round((phase[-1] - phase[0]) / (2 * np.pi)))
    phase = phase[:-1]
    # pick the branch with Im b_0 in (-pi, pi]
    phase = phase - 2 * np.pi * np.round(phase.mean() / (2 * np.pi))
    return np.log(mod) + 1j * phase, winding


def winding_number(a, grid_size=None):
    """Winding number of ``a`` around the origin."""
    m = grid_size or _initial_grid(a)
    m = max(m, _initial_grid(a))
    return _continuous_log(a.on_grid(m))[1]


def log_symbol(a, grid_size=None):
    """Continuous logarithm ``b`` with ``exp(b) = a``.

    Raises
    ------
    NonzeroWinding
        If ``a`` winds around the origin.
    NearZero
        If ``min |a|`` on the sampling grid is below ``1e-10``.
    """
    w = winding_number(a, grid_size)
    if w != 0:
        raise NonzeroWinding(f"winding number {w}; no logarithm in the algebra")

    def pointwise(v):
        logv, _ = _continuous_log(v)
        return logv

    return _sampled_transform(a, pointwise, grid_size)


def exp_symbol(b, grid_size=None):
    """Pointwise exponential of ``b``."""
    return _sampled_transform(b, np.exp, grid_size)


def inverse_symbol(a):
    """``1/a`` computed as ``exp(-log a)``."""
    return exp_symbol(-log_symbol(a))


def decompose_plus_minus(a):
    """Split ``a = a_plus + a_minus`` with ``a_plus`` on ``n >= 0`` and ``a_minus`` on ``n < 0``."""
    split = -a.lo
    plus = FourierSymbol(a.data[split:], 0)
    minus = FourierSymbol(a.data[:split], a.lo) if split else FourierSymbol.constant(0.0)
    return plus, minus


def decompose_even_minus(b):
    """Split ``b = b_zero + b_minus`` with ``b_zero`` even and ``b_minus`` on ``n < 0``.

    ``[b_zero]_{+-k} = b_k`` for ``k >= 0`` and ``[b_minus]_{-k} = b_{-k} - b_k``.
    """
    plus, minus = decompose_plus_minus(b)
    tail = plus - FourierSymbol.constant(plus.coef(0))
    b_zero = plus + flip(tail)
    b_minus = minus - flip(tail)
    return b_zero, b_minus


def factor_even_plus(a, grid_size=None):
    """Factor an even symbol as ``a = a_plus * flip(a_plus)``, ``a_plus = exp(s_0/2 + sum_{k>=1} s_k t^k)``."""
    if not a.is_even():
        raise NotEven("factor_even_plus requires a = flip(a)")
    s = log_symbol(a, grid_size)
    plus, _ = decompose_plus_minus(s)
    b_plus = plus - FourierSymbol.constant(plus.coef(0) / 2)
    return FactorizationEvenPlus(exp_symbol(b_plus, grid_size), a)


def factor_minus_even(a, grid_size=None):
    """Factor ``a = a_minus * a_zero`` with ``[log a_minus]_0 = 0``."""
    b_zero, b_minus = decompose_even_minus(log_symbol(a, grid_size))
    return FactorizationMinusEven(exp_symbol(b_minus, grid_size), exp_symbol(b_zero, grid_size))


# -- JSON symbol format ------------------------------------------------------

def symbol_from_spec(spec):
    """Build a symbol from ``{"form": "coeffs"|"log-coeffs", "entries": {"<n>": [re, im]}}``.

    ``spec`` may be a dict or JSON text.
    """
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise SymbolSpecError(f"malformed symbol JSON: {exc}") from exc
    if not isinstance(spec, dict):
        raise SymbolSpecError("symbol spec must be a JSON object")
    form = spec.get("form")
    if form not in ("coeffs", "log-coeffs"):
        raise SymbolSpecError(f"unknown symbol form {form!r}")
    entries = spec.get("entries", {})
    if not isinstance(entries, dict):
        raise SymbolSpecError("'entries' must be an object")
    coeffs = {}
    for key, value in entries.items():
        try:
            n = int(key)
        except (TypeError, ValueError):
            raise SymbolSpecError(f"non-integer index {key!r}") from None
        if str(n) != str(key).strip():
            raise SymbolSpecError(f"non-integer index {key!r}")
        if isinstance(value, Number):
            value = [value, 0.0]
        if not (isinstance(value, (list, tuple)) and len(value) == 2):
            raise SymbolSpecError(f"entry {key!r} must be [re, im]")
        coeffs[n] = complex(float(value[0]), float(value[1]))
    sym = FourierSymbol.from_coeffs(coeffs)
    return exp_symbol(sym) if form == "log-coeffs" else sym


def symbol_to_spec(a, form="coeffs"):
    """Inverse of :func:`symbol_from_spec` for the ``coeffs`` form (17 significant digits)."""
    entries = {str(n): [float(c.real), float(c.imag)] for n, c in a.coeffs.items()}
    return {"form": form, "entries": entries}
