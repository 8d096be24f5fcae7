"""Loss functions, expected scoring rules, and the Marshall-gap diagnostic."""

from __future__ import annotations

import numpy as np

from .validation import (
    as_float_vector,
    check_loss,
    check_positive_int,
    check_score_kind,
    pad_common,
    validate_pmf,
)

__all__ = [
    "expected_score",
    "marshall_gap",
    "pointwise_loss",
    "s1_mixture_profile",
]

_MONOTONE_TOL = 1e-12


def pointwise_loss(observed_index: int, theta, loss: str = "l2") -> float:
    """Loss of forecast ``theta`` against a single observation.

    The observation enters as its multinomial indicator: L1 is the absolute
    deviation summed over the union support, L2 the squared deviation.
    """
    loss = check_loss(loss)
    idx = check_positive_int(observed_index, "observed_index", minimum=0)
    th = validate_pmf(theta, "theta")
    width = max(th.size, idx + 1)
    delta = np.zeros(width)
    delta[idx] = 1.0
    if th.size < width:
        th = np.pad(th, (0, width - th.size))
    diff = delta - th
    if loss == "l1":
        return float(np.abs(diff).sum())
    return float(np.dot(diff, diff))


def expected_score(theta, p, kind: str = "s2") -> float:
    """Expected loss of forecast ``theta`` against a fresh draw from ``p``.

    ``s1`` is ``2 - 2*<p, theta>`` (expected absolute deviation); ``s2`` is
    ``1 + ||theta||^2 - 2*<theta, p>`` (expected Brier-style quadratic loss,
    a strictly proper score).
    """
    kind = check_score_kind(kind)
    th, q = pad_common(validate_pmf(theta, "theta"), validate_pmf(p, "p"))
    dot = float(th @ q)
    if kind == "s1":
        return 2.0 - 2.0 * dot
    return 1.0 + float(th @ th) - 2.0 * dot


def s1_mixture_profile(h, p, beta: float) -> float:
    """``s1`` score of the mixture ``beta*h + (1-beta)*p`` against ``p``.

    Affine in ``beta``: equals ``2 - 2*||p||^2 - 2*beta*(<p,h> - ||p||^2)``.
    """
    b = float(beta)
    if not 0.0 <= b <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta!r}")
    hh, pp = pad_common(validate_pmf(h, "h"), validate_pmf(p, "p"))
    return expected_score(b * hh + (1.0 - b) * pp, pp, "s1")


def marshall_gap(estimate_cdf, d) -> float:
    """Sup-norm gap between a fitted CDF and the CDF of a decreasing pmf.

    ``d`` must have nonincreasing increments (it is the running sum of a
    decreasing mass function); the check allows 1e-12 slack.  The shorter
    vector is extended by holding its last value, matching CDF semantics on
    the implicit tail.
    """
    est = as_float_vector(estimate_cdf, "estimate_cdf")
    dec = as_float_vector(d, "d")
    increments = np.diff(dec, prepend=0.0)
    if np.any(np.diff(increments) > _MONOTONE_TOL):
        raise ValueError("d must be the CDF of a decreasing pmf (nonincreasing increments)")
    width = max(est.size, dec.size)
    if est.size < width:
        est = np.concatenate([est, np.full(width - est.size, est[-1])])
    if dec.size < width:
        dec = np.concatenate([dec, np.full(width - dec.size, dec[-1])])
    return float(np.max(np.abs(est - dec)))
