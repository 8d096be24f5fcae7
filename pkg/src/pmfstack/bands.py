"""Gaussian limit of the empirical pmf and Monte-Carlo global confidence bands.

The centered multinomial limit has covariance ``C[i, k] = p_i*1{i==k} -
p_i*p_k``.  A draw is built as ``Y_i = W_i - p_i * sum(W)`` from independent
``W_i ~ N(0, p_i)``, which reproduces ``C`` exactly when ``sum(p) = 1`` and
costs O(support) per draw (no factorization).  The sup-norm quantile of
``Y`` calibrates a simultaneous band ``theta_j -+ q/sqrt(n)`` clipped at 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pmf import as_generator
from .validation import check_alpha, check_positive_int, validate_pmf

__all__ = [
    "ConfidenceBand",
    "confidence_band",
    "estimate_sup_quantile",
    "sample_gaussian_limit",
]

# Normal draws per chunk when accumulating sup-norms (memory bound ~128 MiB).
_CHUNK_DRAWS = 1 << 24


@dataclass(frozen=True)
class ConfidenceBand:
    """Simultaneous band ``[max(theta_j - q_hat/sqrt(n), 0), theta_j + q_hat/sqrt(n)]``."""

    lower: np.ndarray
    upper: np.ndarray
    alpha: float
    q_hat: float
    n: int
    mc_reps: int


def sample_gaussian_limit(p, seed, size: int | None = None) -> np.ndarray:
    """Draw from the centered Gaussian limit vector driven by ``p``.

    Returns one vector on the support of ``p`` (components sum to 0), or a
    ``(size, len(p))`` matrix of independent draws when ``size`` is given.
    """
    mass = validate_pmf(p, "p")
    rng = as_generator(seed)
    scale = np.sqrt(mass)
    if size is None:
        w = rng.normal(0.0, scale)
        return w - mass * w.sum()
    size = check_positive_int(size, "size", minimum=1)
    w = rng.normal(0.0, scale, size=(size, mass.size))
    return w - np.outer(w.sum(axis=1), mass)


def _sup_norms(mass: np.ndarray, mc_reps: int, rng: np.random.Generator) -> np.ndarray:
    sups = np.empty(mc_reps)
    rows_per_chunk = max(1, _CHUNK_DRAWS // mass.size)
    done = 0
    while done < mc_reps:
        block = min(rows_per_chunk, mc_reps - done)
        y = sample_gaussian_limit(mass, rng, size=block)
        sups[done : done + block] = np.abs(y).max(axis=1)
        done += block
    return sups


def estimate_sup_quantile(p, alpha, mc_reps: int, seed) -> float:
    """Monte-Carlo upper quantile of the sup-norm of the Gaussian limit.

    Returns the ``ceil((1-alpha)*mc_reps)``-th order statistic of the
    simulated sup-norms (the conservative empirical-quantile convention).
    """
    mass = validate_pmf(p, "p")
    alpha = check_alpha(alpha)
    mc_reps = check_positive_int(mc_reps, "mc_reps", minimum=100)
    rng = as_generator(seed)
    sups = _sup_norms(mass, mc_reps, rng)
    k = min(max(math.ceil((1.0 - alpha) * mc_reps), 1), mc_reps)
    return float(np.partition(sups, k - 1)[k - 1])


def confidence_band(
    theta,
    n: int,
    alpha,
    mc_reps: int,
    seed,
    q_hat: float | None = None,
) -> ConfidenceBand:
    """Global confidence band around a fitted pmf.

    The half-width is ``q_hat / sqrt(n)`` with ``q_hat`` the Monte-Carlo
    sup-norm quantile of the Gaussian limit driven by ``theta`` itself;
    pass ``q_hat`` explicitly to reuse a precomputed quantile (no Monte
    Carlo is run in that case).
    """
    mass = validate_pmf(theta, "theta")
    n = check_positive_int(n, "n", minimum=1)
    alpha = check_alpha(alpha)
    if q_hat is None:
        q_hat = estimate_sup_quantile(mass, alpha, mc_reps, seed)
    else:
        q_hat = float(q_hat)
        if not math.isfinite(q_hat) or q_hat < 0.0:
            raise ValueError(f"q_hat must be a nonnegative real, got {q_hat!r}")
        mc_reps = check_positive_int(mc_reps, "mc_reps", minimum=100)
    half = q_hat / math.sqrt(n)
    lower = np.maximum(mass - half, 0.0)
    upper = mass + half
    return ConfidenceBand(
        lower=lower, upper=upper, alpha=alpha, q_hat=q_hat, n=n, mc_reps=mc_reps
    )
