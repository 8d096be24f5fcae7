"""scikit-learn-style wrappers around the functional core.

``StackedGrenander`` is the headline estimator: fit it on raw nonnegative
integer observations and read off the stacked pmf, its mixture weight, and a
global confidence band.  ``DecreasingProjection`` exposes the isotonic
projection as a stateless transformer so pmf rows can be projected inside
ordinary sklearn pipelines.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bands import ConfidenceBand, confidence_band
from .isotonic import project_decreasing
from .pmf import FrequencyVector
from .stacking import fit_stacked
from .validation import as_observations, check_loss

__all__ = ["DecreasingProjection", "StackedGrenander"]


class StackedGrenander(BaseEstimator):
    """Discrete pmf estimator stacking the empirical pmf with its monotone fit.

    The estimate is ``beta * grenander + (1 - beta) * empirical`` where the
    Grenander part is the isotonic (decreasing) regression of the empirical
    pmf and ``beta`` is chosen by closed-form leave-one-out cross-validation
    under the configured loss.

    Parameters
    ----------
    loss : {"l2", "l1"}, default="l2"
        Cross-validation loss.  Under "l1" the selected weight is always an
        endpoint (plain empirical or plain Grenander fit); "l2" typically
        yields a proper mixture.

    Attributes
    ----------
    pmf_ : ndarray of shape (t_n + 1,)
        Fitted probability vector on ``0..max(X)``.
    beta_ : float
        Selected mixture weight in [0, 1].
    branch_ : str
        Which closed-form case produced ``beta_``.
    empirical_, grenander_ : ndarray
        The two stacked components.
    frequencies_ : FrequencyVector
        Tabulated counts of the training sample.
    diagnostics_ : BetaDiagnostics
        Closed-form quantities behind the selected weight.

    Examples
    --------
    >>> est = StackedGrenander(loss="l2").fit([0, 0, 1, 0, 2, 1])
    >>> est.beta_  # strictly decreasing counts: the stack is purely empirical
    0.0
    """

    def __init__(self, loss: str = "l2"):
        self.loss = loss

    def fit(self, X, y=None):
        """Fit on raw observations (1-d or single-column nonnegative ints)."""
        loss = check_loss(self.loss)
        freq = FrequencyVector.from_observations(X)
        if freq.n < 2:
            raise ValueError("StackedGrenander requires at least two observations")
        mix = fit_stacked(freq, loss)
        self.frequencies_ = freq
        self.pmf_ = mix.theta
        self.empirical_ = mix.empirical_part
        self.grenander_ = mix.grenander_part
        self.diagnostics_ = mix.beta
        self.beta_ = mix.beta.beta
        self.branch_ = mix.beta.branch
        return self

    def _masses(self, X) -> np.ndarray:
        obs = as_observations(X)
        masses = np.zeros(obs.size)
        inside = obs < self.pmf_.size
        masses[inside] = self.pmf_[obs[inside]]
        return masses

    def score_samples(self, X) -> np.ndarray:
        """Log-probability of each observation under the fitted pmf."""
        check_is_fitted(self, "pmf_")
        with np.errstate(divide="ignore"):
            return np.log(self._masses(X))

    def score(self, X, y=None) -> float:
        """Total log-likelihood of ``X`` under the fitted pmf."""
        return float(np.sum(self.score_samples(X)))

    def confidence_band(self, alpha, mc_reps: int, seed) -> ConfidenceBand:
        """Global confidence band around the fitted pmf (see :mod:`pmfstack.bands`)."""
        check_is_fitted(self, "pmf_")
        return confidence_band(self.pmf_, self.frequencies_.n, alpha, mc_reps, seed)


class DecreasingProjection(TransformerMixin, BaseEstimator):
    """Row-wise L2 projection onto nonincreasing sequences (stateless)."""

    def fit(self, X, y=None):
        X = self._as_matrix(X)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_in_")
        X = self._as_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, expected {self.n_features_in_}"
            )
        return np.vstack([project_decreasing(row) for row in X])

    @staticmethod
    def _as_matrix(X) -> np.ndarray:
        arr = np.asarray(X, dtype=float)
        if arr.ndim != 2 or arr.shape[1] == 0:
            raise ValueError(f"X must be a 2-d array with columns, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("X must contain only finite values")
        return arr
