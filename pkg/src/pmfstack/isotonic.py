"""L2 projection onto the nonincreasing cone and its leave-one-out variants.

The projection (pool-adjacent-violators) turns the empirical pmf into the
Grenander estimator of a decreasing distribution; the leave-one-out variants
re-project the frequency table with one count removed from one cell and feed
the cross-validation closed forms in :mod:`pmfstack.stacking`.
"""

from __future__ import annotations

import numpy as np

from .pmf import FrequencyVector, empirical, loo_empirical
from .validation import PMF_SUM_TOL, as_float_vector

__all__ = [
    "gamma_vector",
    "grenander",
    "loo_grenander",
    "loo_projection_matrix",
    "project_decreasing",
]


def project_decreasing(values) -> np.ndarray:
    """Project a vector onto the cone of nonincreasing sequences.

    Linear-time pool-adjacent-violators: scan left to right keeping a stack
    of blocks; whenever a block mean strictly exceeds its left neighbour's,
    merge the two into their (length-weighted) mean.  Ties are left alone;
    equal adjacent values already satisfy the constraint.

    The output is piecewise constant on the pooled blocks and every block
    carries one stored value (``np.repeat``), so monotonicity holds exactly,
    not merely up to a tolerance.  Sums are preserved up to rounding.
    """
    v = as_float_vector(values, "values")
    means = np.empty(v.size)
    lengths = np.empty(v.size, dtype=np.int64)
    m = 0
    for x in v:
        means[m] = x
        lengths[m] = 1
        m += 1
        while m > 1 and means[m - 2] < means[m - 1]:
            total = means[m - 2] * lengths[m - 2] + means[m - 1] * lengths[m - 1]
            lengths[m - 2] += lengths[m - 1]
            means[m - 2] = total / lengths[m - 2]
            m -= 1
    return np.repeat(means[:m], lengths[:m])


def grenander(freq: FrequencyVector) -> np.ndarray:
    """Grenander estimator: isotonic (decreasing) regression of the empirical pmf.

    The result lives on the observed support ``0..t_n``, keeps the last cell
    positive, and sums to 1; it is renormalized only if rounding drift ever
    exceeded the pmf tolerance (pooling preserves sums exactly otherwise).
    """
    g = project_decreasing(empirical(freq))
    total = g.sum()
    if abs(total - 1.0) > PMF_SUM_TOL:  # pragma: no cover - pooling preserves sums
        g = g / total
    return g


def loo_grenander(freq: FrequencyVector, j: int) -> np.ndarray:
    """Decreasing projection of the sample with one count removed from cell ``j``."""
    return project_decreasing(loo_empirical(freq, j))


def loo_projection_matrix(freq: FrequencyVector) -> tuple[np.ndarray, np.ndarray]:
    """All leave-one-out projections of a frequency table, one per positive cell.

    Returns ``(cells, matrix)`` where ``cells`` lists the indices with
    positive counts and ``matrix[r]`` is ``loo_grenander(freq, cells[r])``.
    Rows are computed independently in index order (deterministic sums).
    """
    if freq.n < 2:
        raise ValueError("leave-one-out requires a sample of size n >= 2")
    cells = np.flatnonzero(freq.counts)
    matrix = np.empty((cells.size, freq.t_n + 1))
    for r, j in enumerate(cells):
        matrix[r] = loo_grenander(freq, int(j))
    return cells, matrix


def gamma_vector(freq: FrequencyVector) -> np.ndarray:
    """Diagonal of the leave-one-out projections.

    Entry ``j`` holds the value at ``j`` of the projection with one count
    removed from cell ``j`` when ``x_j > 0``, and 0 for empty cells.
    """
    cells, matrix = loo_projection_matrix(freq)
    out = np.zeros(freq.t_n + 1)
    out[cells] = matrix[np.arange(cells.size), cells]
    return out
