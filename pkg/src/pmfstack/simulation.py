"""Simulation harness: benchmark models, replication studies, and coverage.

Four benchmark distributions are built in.  M1 (a mixture of three uniform
blocks) and M2 (geometric) are decreasing; M3 (negative binomial) and M4 (a
bimodal Poisson mixture) are not.  Infinite supports are truncated where the
tail mass drops below ``tail_mass`` and renormalized.

Every replication derives its own PCG64 sub-stream from ``(seed, rep)``, so
all estimators within a replication see the same sample (paired comparisons)
and results are byte-stable for a given seed regardless of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .bands import confidence_band
from .isotonic import grenander
from .pmf import FrequencyVector, derived_generator, empirical, lk_distance, sample_frequencies
from .scoring import expected_score
from .stacking import fit_stacked, scaled_loo_projections
from .validation import check_alpha, check_positive_int, validate_pmf

__all__ = [
    "BAND_ESTIMATOR_NAMES",
    "ESTIMATOR_NAMES",
    "MODEL_NAMES",
    "CoverageRow",
    "ReplicationResult",
    "RiskPoint",
    "coverage_experiment",
    "model_pmf",
    "risk_curve",
    "run_replications",
]

MODEL_NAMES = ("M1", "M2", "M3", "M4")
ESTIMATOR_NAMES = ("Empirical", "Grenander", "GS_L1", "GS_L2")
BAND_ESTIMATOR_NAMES = ("Empirical", "GS_L1", "GS_L2")

_GEOM_RATIO = 0.25


@dataclass(frozen=True)
class ReplicationResult:
    """One estimator's performance on one simulated sample."""

    model: str
    estimator: str
    rep: int
    l2_distance: float
    s2_score: float
    beta: float


@dataclass(frozen=True)
class RiskPoint:
    """Scaled risk ``n * mean ||estimate - truth||_2^2`` at one sample size."""

    model: str
    estimator: str
    n: int
    scaled_risk: float


@dataclass(frozen=True)
class CoverageRow:
    """Fraction of replications whose band contained the whole true pmf."""

    model: str
    estimator: str
    n: int
    reps: int
    covered_fraction: float


def _check_tail_mass(tail_mass) -> float:
    tm = float(tail_mass)
    if not 0.0 < tm < 1.0:
        raise ValueError(f"tail_mass must lie in (0, 1), got {tail_mass!r}")
    return tm


def _truncate_by_survival(pmf_of, sf_of, tail_mass: float) -> np.ndarray:
    """Smallest support 0..m with P(X > m) < tail_mass, renormalized."""
    hi = 16
    while float(sf_of(hi)) >= tail_mass:
        hi *= 2
        if hi > 1 << 24:  # pragma: no cover - defensive
            raise RuntimeError("model tail does not decay below tail_mass")
    lo = -1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if float(sf_of(mid)) < tail_mass:
            hi = mid
        else:
            lo = mid
    mass = np.asarray(pmf_of(np.arange(hi + 1)), dtype=float)
    return mass / mass.sum()


def _mixture_uniform_blocks() -> np.ndarray:
    # 0.15 U{0..3} + 0.1 U{0..7} + 0.75 U{0..11}
    p = np.zeros(12)
    p[:4] += 0.15 / 4
    p[:8] += 0.1 / 8
    p[:12] += 0.75 / 12
    return p


def model_pmf(model, tail_mass: float = 1e-12) -> np.ndarray:
    """Probability vector of a benchmark model or a custom pmf.

    ``model`` is one of ``"M1".."M4"`` or an explicit probability vector.
    Custom vectors are subjected to the same tail rule: everything beyond
    the first index whose tail mass falls below ``tail_mass`` is dropped and
    the rest renormalized (for typical custom inputs this only trims
    trailing zeros).
    """
    tm = _check_tail_mass(tail_mass)
    if not isinstance(model, str):
        mass = validate_pmf(model, "model")
        tail = np.concatenate([np.cumsum(mass[::-1])[::-1][1:], [0.0]])
        cut = int(np.argmax(tail < tm))
        kept = mass[: cut + 1]
        return kept / kept.sum()
    tag = model.upper()
    if tag == "M1":
        return _mixture_uniform_blocks()
    if tag == "M2":
        return _truncate_by_survival(
            lambda j: (1.0 - _GEOM_RATIO) * _GEOM_RATIO**j,
            lambda m: _GEOM_RATIO ** (m + 1),
            tm,
        )
    if tag == "M3":
        nb = stats.nbinom(7, 0.4)
        return _truncate_by_survival(nb.pmf, nb.sf, tm)
    if tag == "M4":
        lo, hi = stats.poisson(2.0), stats.poisson(15.0)
        return _truncate_by_survival(
            lambda j: 0.375 * lo.pmf(j) + 0.625 * hi.pmf(j),
            lambda m: 0.375 * lo.sf(m) + 0.625 * hi.sf(m),
            tm,
        )
    raise ValueError(f"unknown model {model!r}; expected one of {MODEL_NAMES}")


def _model_label(model) -> str:
    return model.upper() if isinstance(model, str) else "custom"


def _fit_all(freq: FrequencyVector) -> dict[str, tuple[np.ndarray, float]]:
    """Fit the four estimators on one sample, sharing the LOO projections."""
    loo = scaled_loo_projections(freq)
    fits: dict[str, tuple[np.ndarray, float]] = {
        "Empirical": (empirical(freq), 0.0),
        "Grenander": (grenander(freq), 1.0),
    }
    for loss, name in (("l1", "GS_L1"), ("l2", "GS_L2")):
        mix = fit_stacked(freq, loss, loo=loo)
        fits[name] = (mix.theta, mix.beta.beta)
    return fits


def run_replications(
    model, n: int, reps: int, seed: int, tail_mass: float = 1e-12
) -> list[ReplicationResult]:
    """Simulate ``reps`` samples of size ``n`` and score all four estimators.

    Each replication records the l2 distance to the truth, the expected
    quadratic score against the truth, and the fitted mixture weight (0 for
    the empirical estimator, 1 for the Grenander estimator, the selected
    beta for the stacked fits).  Replication ``r`` draws from the sub-stream
    ``(seed, r)``.
    """
    n = check_positive_int(n, "n", minimum=2)
    reps = check_positive_int(reps, "reps", minimum=1)
    truth = model_pmf(model, tail_mass)
    label = _model_label(model)
    out: list[ReplicationResult] = []
    for rep in range(reps):
        freq = sample_frequencies(truth, n, derived_generator(seed, rep))
        fits = _fit_all(freq)
        for name in ESTIMATOR_NAMES:
            theta, beta = fits[name]
            out.append(
                ReplicationResult(
                    model=label,
                    estimator=name,
                    rep=rep,
                    l2_distance=lk_distance(theta, truth, 2),
                    s2_score=expected_score(theta, truth, "s2"),
                    beta=beta,
                )
            )
    return out


def risk_curve(
    model, sizes, reps: int, seed: int, tail_mass: float = 1e-12
) -> list[RiskPoint]:
    """Scaled risk ``n * mean ||estimate - truth||_2^2`` across sample sizes.

    Returns ``len(sizes) * 4`` points, in the given size order; replication
    ``r`` at the ``i``-th size draws from the sub-stream ``(seed, i, r)``.
    """
    sizes = [check_positive_int(s, "size", minimum=2) for s in sizes]
    if not sizes:
        raise ValueError("sizes must be non-empty")
    reps = check_positive_int(reps, "reps", minimum=1)
    truth = model_pmf(model, tail_mass)
    label = _model_label(model)
    out: list[RiskPoint] = []
    for i, n in enumerate(sizes):
        sums = dict.fromkeys(ESTIMATOR_NAMES, 0.0)
        for rep in range(reps):
            freq = sample_frequencies(truth, n, derived_generator(seed, i, rep))
            for name, (theta, _) in _fit_all(freq).items():
                sums[name] += lk_distance(theta, truth, 2) ** 2
        for name in ESTIMATOR_NAMES:
            out.append(
                RiskPoint(model=label, estimator=name, n=n, scaled_risk=n * sums[name] / reps)
            )
    return out


def _band_covers(theta: np.ndarray, band, truth: np.ndarray) -> bool:
    """Containment of the whole true pmf, including cells beyond the fit."""
    half = band.q_hat / np.sqrt(band.n)
    width = max(theta.size, truth.size)
    lower = np.zeros(width)
    lower[: theta.size] = band.lower
    upper = np.full(width, half)
    upper[: theta.size] = band.upper
    padded = np.zeros(width)
    padded[: truth.size] = truth
    return bool(np.all((lower <= padded) & (padded <= upper)))


def coverage_experiment(
    model,
    n: int,
    reps: int,
    alpha,
    mc_reps: int,
    seed: int,
    tail_mass: float = 1e-12,
) -> list[CoverageRow]:
    """Empirical coverage of the global bands for Empirical, GS_L1, GS_L2.

    For each replication and estimator the band is calibrated on the fitted
    pmf itself (Monte-Carlo sup-norm quantile) and counted as covering when
    every cell of the true pmf lies inside it.  Sample draws use sub-stream
    ``(seed, rep, 0)`` and the per-estimator Monte-Carlo quantiles use
    ``(seed, rep, 1..3)``.
    """
    n = check_positive_int(n, "n", minimum=2)
    reps = check_positive_int(reps, "reps", minimum=1)
    alpha = check_alpha(alpha)
    mc_reps = check_positive_int(mc_reps, "mc_reps", minimum=100)
    truth = model_pmf(model, tail_mass)
    label = _model_label(model)
    covered = dict.fromkeys(BAND_ESTIMATOR_NAMES, 0)
    for rep in range(reps):
        freq = sample_frequencies(truth, n, derived_generator(seed, rep, 0))
        loo = scaled_loo_projections(freq)
        fitted = {
            "Empirical": empirical(freq),
            "GS_L1": fit_stacked(freq, "l1", loo=loo).theta,
            "GS_L2": fit_stacked(freq, "l2", loo=loo).theta,
        }
        for offset, name in enumerate(BAND_ESTIMATOR_NAMES, start=1):
            theta = fitted[name]
            band = confidence_band(
                theta, n, alpha, mc_reps, derived_generator(seed, rep, offset)
            )
            if _band_covers(theta, band, truth):
                covered[name] += 1
    return [
        CoverageRow(
            model=label,
            estimator=name,
            n=n,
            reps=reps,
            covered_fraction=covered[name] / reps,
        )
        for name in BAND_ESTIMATOR_NAMES
    ]
