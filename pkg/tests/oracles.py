"""Brute-force reference implementations used only by the tests.

Everything here is deliberately slow and structurally independent of the
library code it checks: projections come from exhaustive max-min formulas,
mixture weights from dense grid minimization, and criteria from explicit
leave-one-out enumeration with a fixed target.
"""

from __future__ import annotations

import numpy as np

from pmfstack import FrequencyVector, loo_empirical


def maxmin_expressions(values):
    """Evaluate all four max-min characterizations of the decreasing projection.

    With ``avg(a, b)`` the mean of ``values[a..b]``, the four forms at
    index ``j`` are::

        e1[j] = min_{a <= j} max_{b >= j} avg(a, b)
        e2[j] = max_{b >= j} min_{a <= j} avg(a, b)
        e3[j] = min_{a <= j} max_{b >= a} avg(a, b)
        e4[j] = max_{b >= j} min_{a <= b} avg(a, b)
    """
    v = np.asarray(values, dtype=float)
    t = v.size
    cs = np.concatenate([[0.0], np.cumsum(v)])
    avg = np.full((t, t), np.nan)
    for a in range(t):
        avg[a, a:] = (cs[a + 1 :] - cs[a]) / np.arange(1, t - a + 1)
    e1 = np.empty(t)
    e2 = np.empty(t)
    e3 = np.empty(t)
    e4 = np.empty(t)
    for j in range(t):
        e1[j] = min(np.max(avg[a, j:]) for a in range(j + 1))
        e2[j] = max(np.min(avg[: j + 1, b]) for b in range(j, t))
        e3[j] = min(np.max(avg[a, a:]) for a in range(j + 1))
        e4[j] = max(np.min(avg[: b + 1, b]) for b in range(j, t))
    return e1, e2, e3, e4


def maxmin_projection(values) -> np.ndarray:
    """Decreasing projection via the first max-min expression."""
    return maxmin_expressions(values)[0]


def stone_cv(freq: FrequencyVector, target, weight: float, loss: str) -> float:
    """Direct leave-one-out criterion for mixing the empirical pmf with ``target``.

    Enumerates distinct observed values, refits the leave-one-out empirical
    pmf, mixes it with the fixed ``target`` at the given weight, and scores
    against the removed observation's indicator.
    """
    lam = np.zeros(freq.t_n + 1)
    src = np.asarray(target, dtype=float)
    lam[: min(lam.size, src.size)] = src[: lam.size]
    total = 0.0
    for j in np.flatnonzero(freq.counts):
        theta = weight * lam + (1.0 - weight) * loo_empirical(freq, int(j))
        resid = -theta
        resid[j] += 1.0
        if loss == "l1":
            value = float(np.abs(resid).sum())
        else:
            value = float(np.dot(resid, resid))
        total += float(freq.counts[j]) * value
    return total / freq.n


def random_frequency(rng: np.random.Generator, max_t: int = 10, max_n: int = 50) -> FrequencyVector:
    """Random frequency table with t_n <= max_t and 2 <= n <= max_n."""
    while True:
        width = int(rng.integers(1, max_t + 2))
        counts = rng.integers(0, 6, size=width)
        total = int(counts.sum())
        if total < 2:
            continue
        if total > max_n:
            continue
        return FrequencyVector(counts)


def random_pmf(rng: np.random.Generator, max_len: int = 8, min_len: int = 1) -> np.ndarray:
    """Random probability vector with a positive last cell."""
    width = int(rng.integers(min_len, max_len + 1))
    raw = rng.dirichlet(np.ones(width))
    if raw[-1] <= 0:  # pragma: no cover - dirichlet draws are a.s. positive
        raw[-1] = 1e-6
        raw /= raw.sum()
    return raw


def random_decreasing_cdf(rng: np.random.Generator, max_len: int = 10) -> np.ndarray:
    """CDF of a random decreasing pmf (sort a random pmf, then cumsum)."""
    mass = np.sort(random_pmf(rng, max_len))[::-1]
    return np.cumsum(mass)
