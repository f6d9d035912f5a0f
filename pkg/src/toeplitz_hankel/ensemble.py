"""Monte Carlo sampling of CUE and SO(2n) spectra.

Averages of multiplicative linear statistics over these ensembles are
Toeplitz and Toeplitz+Hankel determinants; the sampler gives an independent
statistical check of both.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .determinants import LogDet, det_lu
from .errors import NotEven
from .operators import oplus_section, toeplitz_section
from .reports import VerificationReport
from .symbol import exp_symbol

__all__ = [
    "SpectrumSample",
    "MCEstimate",
    "haar_unitary",
    "haar_special_orthogonal",
    "sample_cue",
    "sample_oplus",
    "sample_cue_batch",
    "sample_oplus_batch",
    "mc_mean",
    "verify_cue_identity",
    "verify_oplus_identity",
    "NORMALIZATIONS",
]

NORMALIZATIONS = ("plain", "halved_first_row")
_BATCH = 4096


@dataclass(frozen=True)
class SpectrumSample:
    angles: np.ndarray
    ensemble: str
    seed: int


@dataclass(frozen=True)
class MCEstimate:
    """Sample mean with its standard error ``std / sqrt(samples)``.

    ``m2`` is the sum of squared deviations, kept so that estimates from
    independent batches combine exactly (:meth:`combine`).
    """

    mean: complex
    stderr: float
    samples: int
    m2: float = 0.0

    @classmethod
    def from_values(cls, values):
        v = np.asarray(values, dtype=complex)
        n = v.size
        if n < 2:
            raise ValueError("need at least two samples")
        mean = complex(v.mean())
        m2 = float(np.sum(np.abs(v - mean) ** 2))
        return cls(mean, float(np.sqrt(m2 / (n - 1) / n)), n, m2)

    def combine(self, other):
        """Pairwise mean/variance merge; independent of the batch partition up to roundoff."""
        n = self.samples + other.samples
        delta = other.mean - self.mean
        mean = self.mean + delta * other.samples / n
        m2 = self.m2 + other.m2 + abs(delta) ** 2 * self.samples * other.samples / n
        return MCEstimate(mean, float(np.sqrt(m2 / (n - 1) / n)), n, m2)


def _rng(seed):
    return np.random.default_rng(np.random.SeedSequence(seed))


def haar_unitary(n, rng, batch=None):
    """Haar unitary matrices: QR of complex Ginibre with the diagonal phases of R removed."""
    shape = (n, n) if batch is None else (batch, n, n)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def haar_special_orthogonal(n, rng, batch=None):
    """Haar SO(n): real QR with sign correction, then swap two columns if ``det = -1``."""
    shape = (n, n) if batch is None else (batch, n, n)
    q, r = np.linalg.qr(rng.standard_normal(shape))
    q = q * np.sign(np.diagonal(r, axis1=-2, axis2=-1))[..., None, :]
    neg = np.linalg.det(q) < 0
    if np.any(neg):
        q = q.copy()
        if q.ndim == 2:
            q[:, [0, 1]] = q[:, [1, 0]]
        else:
            q[np.ix_(neg, np.arange(n), [0, 1])] = q[np.ix_(neg, np.arange(n), [1, 0])]
    return q


def _cue_angles(u):
    return np.angle(np.linalg.eigvals(u))


def _oplus_angles(q, n):
    """The ``n`` angles in ``[0, pi]`` of the conjugate pairs ``e^{+-i theta}``."""
    ang = np.sort(np.abs(np.angle(np.linalg.eigvals(q))), axis=-1)
    return ang[..., ::2][..., :n]


def sample_cue(n, seed):
    """Eigenangles of one Haar unitary ``n x n`` matrix; deterministic in ``seed``."""
    if n < 1:
        raise ValueError("n must be positive")
    return SpectrumSample(_cue_angles(haar_unitary(n, _rng(seed))), f"CUE({n})", int(seed))


def sample_oplus(n, seed):
    """The ``n`` pair angles of one Haar SO(2n) matrix."""
    if n < 1:
        raise ValueError("n must be positive")
    q = haar_special_orthogonal(2 * n, _rng(seed))
    return SpectrumSample(_oplus_angles(q, n), f"OPlus({2 * n})", int(seed))


def _batches(samples, seed):
    """Independent child generators, one per batch of at most ``_BATCH`` draws."""
    counts = [_BATCH] * (samples // _BATCH)
    if samples % _BATCH:
        counts.append(samples % _BATCH)
    children = np.random.SeedSequence(seed).spawn(len(counts))
    return [(c, np.random.default_rng(s)) for c, s in zip(counts, children)]


def sample_cue_batch(n, samples, seed):
    """``(samples, n)`` array of CUE eigenangles."""
    return np.concatenate([_cue_angles(haar_unitary(n, rng, c)) for c, rng in _batches(samples, seed)])


def sample_oplus_batch(n, samples, seed):
    """``(samples, n)`` array of SO(2n) pair angles."""
    return np.concatenate([
        _oplus_angles(haar_special_orthogonal(2 * n, rng, c), n) for c, rng in _batches(samples, seed)
    ])


def mc_mean(statistic, angles):
    """MCEstimate of ``prod_j statistic(theta_j)`` over the rows of ``angles``."""
    return MCEstimate.from_values(np.prod(statistic(angles), axis=-1))


def _passed(est, target, k=4.0):
    return bool(abs(est.mean - target) <= k * est.stderr) if est.stderr > 0 else bool(est.mean == target)


def _mc_report(command, est, rhs, params, notes=""):
    rhs_val = rhs.value
    rel = abs(est.mean - rhs_val) / abs(rhs_val) if rhs_val != 0 else abs(est.mean)
    params = dict(params, mc_mean=est.mean, mc_stderr=est.stderr, samples=est.samples)
    return VerificationReport(command, LogDet.from_complex(est.mean), rhs, float(rel),
                              _passed(est, rhs_val), params, notes)


def verify_cue_identity(f, lam, n, samples, seed):
    """``E prod_j exp(i lam f(theta_j))`` over CUE(n) against ``det T_n(exp(i lam f))``.

    Passes when the Monte Carlo mean is within four standard errors.
    """
    angles = sample_cue_batch(n, samples, seed)
    est = mc_mean(lambda th: np.exp(1j * lam * f(th)), angles)
    rhs = det_lu(toeplitz_section(exp_symbol(f * (1j * lam)), n))
    params = {"N": n, "lambda": lam, "seed": seed, "ensemble": "CUE"}
    return _mc_report("mc", est, rhs, params)


def verify_oplus_identity(f, lam, n, samples, seed, normalization="halved_first_row"):
    """``E prod_j a(theta_j)`` over SO(2n) against ``det(a_{j-k} + a_{j+k})``.

    ``a = exp(i lam f)`` with ``f`` even and real; the product takes one
    factor per conjugate pair ``e^{+-i theta_j}`` (taking both would square
    the symbol).  Under ``halved_first_row``
    row 0 of the matrix is halved (the determinant is halved); ``plain`` uses
    the matrix as is.  The notes record which normalizations bracket the
    Monte Carlo mean.
    """
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    if not f.is_even():
        raise NotEven("the statistic must be even")
    a = exp_symbol(f * (1j * lam))
    angles = sample_oplus_batch(n, samples, seed)
    est = mc_mean(lambda th: np.exp(1j * lam * f(th)), angles)
    mats = {"plain": oplus_section(a, n)}
    halved = mats["plain"].copy()
    halved[0, :] /= 2
    mats["halved_first_row"] = halved
    dets = {k: det_lu(m) for k, m in mats.items()}
    ok = [k for k in NORMALIZATIONS if _passed(est, dets[k].value)]
    params = {"N": n, "lambda": lam, "seed": seed, "ensemble": "OPlus",
              "normalization": normalization, "passing_normalizations": ok}
    return _mc_report("mc", est, dets[normalization], params,
                      notes="passing normalization(s): " + (", ".join(ok) or "none"))
