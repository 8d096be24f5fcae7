"""Cross-validated convex mixing of the empirical pmf with a decreasing target.

Two mixtures are provided.  ``stone_weight`` stacks the empirical pmf with a
*fixed* probability vector, the classical leave-one-out scheme of Stone
(1974), and has closed-form weights under both losses.  ``stacking_weight``
stacks the empirical pmf with its own Grenander (decreasing) projection; the
fixed target is replaced by the leave-one-out projections, which changes the
closed forms:

* L1 loss: the criterion is affine in the weight, so the optimum is an
  endpoint.  beta = 0 iff ``B_n >= n`` where ``B_n`` sums, over cells with a
  positive count, ``(x_j - n*g_j)^2 + (n+1)*g_j*(x_j - n*g_j) + n*g_j^2``
  with ``g_j`` the leave-one-out projection value at its own cell.
* L2 loss: the criterion is the parabola ``(a_n*beta^2 - 2*b_n*beta)`` up to
  an additive constant, minimized at ``b_n/a_n`` clipped to [0, 1], with the
  degenerate ``a_n = 0`` (strictly decreasing counts) mapped to beta = 0.

``cv_criterion`` evaluates the leave-one-out criterion by direct enumeration
and is deliberately independent of the closed forms so the two routes can
check each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .isotonic import grenander, project_decreasing
from .pmf import FrequencyVector, empirical, loo_empirical
from .validation import check_loss, validate_pmf

__all__ = [
    "BetaDiagnostics",
    "MixtureFit",
    "cv_criterion",
    "fit_stacked",
    "scaled_loo_projections",
    "stacking_weight",
    "stone_weight",
]

#: a_n scales like n^3 when the truth is non-monotone; |a_n| below this
#: relative threshold is treated as the exact-zero degenerate branch.
A_ZERO_REL_TOL = 1e-9


@dataclass(frozen=True)
class BetaDiagnostics:
    """Selected mixture weight plus the closed-form quantities behind it.

    ``branch`` records which case fired: ``ratio`` (interior or boundary
    ``b_n/a_n``), ``clip_zero`` / ``clip_one`` (criterion minimized at an
    endpoint), or ``degenerate_a_zero`` (L2 only: strictly decreasing counts
    make the criterion constant and the weight is set to 0).  ``a_n``/``b_n``
    are populated for L2, ``B_n`` for L1.
    """

    loss: str
    beta: float
    branch: str
    a_n: float | None = None
    b_n: float | None = None
    B_n: float | None = None


@dataclass(frozen=True)
class MixtureFit:
    """A fitted convex combination ``theta = beta*grenander + (1-beta)*empirical``."""

    theta: np.ndarray
    beta: BetaDiagnostics
    grenander_part: np.ndarray
    empirical_part: np.ndarray


def _check_loo_sample(freq: FrequencyVector) -> None:
    if freq.n < 2:
        raise ValueError("cross-validated stacking requires a sample of size n >= 2")


def scaled_loo_projections(freq: FrequencyVector) -> tuple[np.ndarray, np.ndarray]:
    """Decreasing projections of ``x - e_j``, one row per positive cell.

    These equal ``(n - 1)`` times the leave-one-out projections.  The closed
    forms below consume this scaled version: it keeps the arithmetic in the
    integer domain (projection block means of integers), so the degenerate
    strictly-decreasing case yields exact zeros instead of roundtrip noise
    from dividing by ``n - 1`` and multiplying back.
    """
    _check_loo_sample(freq)
    base = freq.counts.astype(float)
    cells = np.flatnonzero(freq.counts)
    matrix = np.empty((cells.size, base.size))
    for r, j in enumerate(cells):
        removed = base.copy()
        removed[j] -= 1.0
        matrix[r] = project_decreasing(removed)
    return cells, matrix


def stone_weight(freq: FrequencyVector, target, loss: str = "l2") -> float:
    """Leave-one-out mixture weight for stacking the empirical pmf with ``target``.

    ``target`` is a fixed probability vector (zero-padded or truncated to the
    observed support ``0..t_n``).  Under L1 the weight is 0 or 1 by a single
    threshold; under L2 it is ``b*/a*`` clipped at 1, where
    ``a* = n - sum(2*x_j*(x_j - target_j*(n-1)) - n*(x_j - target_j*(n-1))^2)`` and
    ``b* = n^2 - sum(x_j^2)``.  ``b* = 0`` (all mass in one cell) gives 0.
    """
    loss = check_loss(loss)
    _check_loo_sample(freq)
    lam = validate_pmf(target, "target")
    width = freq.t_n + 1
    if lam.size < width:
        lam = np.pad(lam, (0, width - lam.size))
    else:
        lam = lam[:width]
    x = freq.counts.astype(float)
    n = freq.n
    if loss == "l1":
        total = float(np.sum((x - n * lam) ** 2 + (n + 1) * lam * (x - n * lam) + n * lam**2))
        return 0.0 if total >= n else 1.0
    shifted = x - lam * (n - 1)
    a_star = n - float(np.sum(2.0 * x * shifted - n * shifted**2))
    b_star = float(n) ** 2 - float(np.sum(x**2))
    if b_star == 0.0:
        return 0.0
    if b_star <= a_star:
        return b_star / a_star
    return 1.0


def stacking_weight(
    freq: FrequencyVector,
    loss: str = "l2",
    *,
    loo: tuple[np.ndarray, np.ndarray] | None = None,
) -> BetaDiagnostics:
    """Leave-one-out mixture weight for the Grenander/empirical stack.

    ``loo`` may carry a precomputed ``scaled_loo_projections(freq)`` so driver
    loops can fit both losses from one set of projections.
    """
    loss = check_loss(loss)
    _check_loo_sample(freq)
    n = freq.n
    if loo is None:
        cells, scaled = scaled_loo_projections(freq)
    else:
        cells, scaled = loo
        # scaled rows are projections of x - e_j and must sum to n - 1
        if abs(float(scaled[0].sum()) - (n - 1)) > 1e-6 * n:
            raise ValueError("loo must come from scaled_loo_projections(freq)")
    x = freq.counts.astype(float)
    xj = x[cells]
    rows = np.arange(cells.size)
    scaled_gamma = scaled[rows, cells]  # (n-1) * gamma_vector at positive cells

    if loss == "l1":
        gamma = scaled_gamma / (n - 1)
        terms = (xj - n * gamma) ** 2 + (n + 1) * gamma * (xj - n * gamma) + n * gamma**2
        big_b = float(terms.sum())
        if big_b >= n:
            return BetaDiagnostics(loss="l1", beta=0.0, branch="clip_zero", B_n=big_b)
        return BetaDiagnostics(loss="l1", beta=1.0, branch="clip_one", B_n=big_b)

    # a_n as the weighted sum of squared leave-one-out residuals (identical to
    # the "n - sum(...)" rearrangement but exactly 0 for decreasing counts,
    # because the scaled projections then equal x - e_j without rounding).
    resid = x[None, :] - scaled
    resid[rows, cells] -= 1.0
    a_n = float(np.sum(xj * np.einsum("rk,rk->r", resid, resid)))
    # the (n-1) factor in b_n cancels against the 1/(n-1) in the projections
    gamma_dot = float(xj @ scaled_gamma)
    b_n = float(n) ** 2 - float(np.sum(x**2)) + float(np.sum(xj * (gamma_dot - scaled @ x)))

    if abs(a_n) <= A_ZERO_REL_TOL * float(n) ** 3:
        return BetaDiagnostics(loss="l2", beta=0.0, branch="degenerate_a_zero", a_n=a_n, b_n=b_n)
    if b_n < 0.0:
        return BetaDiagnostics(loss="l2", beta=0.0, branch="clip_zero", a_n=a_n, b_n=b_n)
    if b_n <= a_n:
        return BetaDiagnostics(loss="l2", beta=b_n / a_n, branch="ratio", a_n=a_n, b_n=b_n)
    return BetaDiagnostics(loss="l2", beta=1.0, branch="clip_one", a_n=a_n, b_n=b_n)


def fit_stacked(
    freq: FrequencyVector,
    loss: str = "l2",
    *,
    loo: tuple[np.ndarray, np.ndarray] | None = None,
) -> MixtureFit:
    """Fit ``theta = beta*grenander + (1-beta)*empirical`` with cross-validated beta.

    ``loo`` is an optional precomputed ``scaled_loo_projections(freq)``.
    """
    diag = stacking_weight(freq, loss, loo=loo)
    p_hat = empirical(freq)
    g_hat = grenander(freq)
    theta = diag.beta * g_hat + (1.0 - diag.beta) * p_hat
    return MixtureFit(theta=theta, beta=diag, grenander_part=g_hat, empirical_part=p_hat)


def cv_criterion(freq: FrequencyVector, beta, loss: str = "l2"):
    """Leave-one-out criterion evaluated by direct enumeration.

    For each cell ``j`` with a positive count, the mixture is refitted on the
    sample with one count removed from ``j`` and scored against the indicator
    of ``j``; terms are weighted by ``x_j`` and averaged.  ``beta`` may be a
    scalar or an array (e.g. a minimization grid); the return matches.

    This routine never touches the closed forms above; it is the reference
    they are tested against.
    """
    loss = check_loss(loss)
    _check_loo_sample(freq)
    beta_arr = np.asarray(beta, dtype=float)
    scalar = beta_arr.ndim == 0
    grid = np.atleast_1d(beta_arr)
    if np.any((grid < 0.0) | (grid > 1.0)) or not np.all(np.isfinite(grid)):
        raise ValueError("beta must lie in [0, 1]")
    total = np.zeros(grid.size)
    for j in np.flatnonzero(freq.counts):
        p_loo = loo_empirical(freq, int(j))
        g_loo = project_decreasing(p_loo)
        theta = np.outer(grid, g_loo) + np.outer(1.0 - grid, p_loo)
        resid = -theta
        resid[:, j] += 1.0
        if loss == "l1":
            values = np.abs(resid).sum(axis=1)
        else:
            values = np.einsum("bk,bk->b", resid, resid)
        total += freq.counts[j] * values
    total /= freq.n
    return float(total[0]) if scalar else total.reshape(beta_arr.shape)
