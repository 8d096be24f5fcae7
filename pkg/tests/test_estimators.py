"""The scikit-learn-facing estimator surface."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from pmfstack import (
    DecreasingProjection,
    FrequencyVector,
    StackedGrenander,
    fit_stacked,
)


class TestStackedGrenander:
    def test_fit_exposes_the_mixture(self):
        obs = [0, 0, 1, 0, 1, 2, 0, 3]
        est = StackedGrenander(loss="l2").fit(obs)
        mix = fit_stacked(FrequencyVector.from_observations(obs), "l2")
        assert est.pmf_.tolist() == mix.theta.tolist()
        assert est.beta_ == mix.beta.beta
        assert est.branch_ == mix.beta.branch
        assert est.empirical_.tolist() == mix.empirical_part.tolist()
        assert est.grenander_.tolist() == mix.grenander_part.tolist()
        assert est.frequencies_.n == len(obs)

    def test_fit_returns_self_and_accepts_columns(self):
        X = np.array([[0], [1], [1], [2]])
        est = StackedGrenander()
        assert est.fit(X) is est
        assert est.pmf_.size == 3

    def test_strictly_decreasing_counts_reduce_to_empirical(self):
        est = StackedGrenander(loss="l2").fit([0, 0, 0, 1, 1, 2])
        assert est.beta_ == 0.0
        assert est.branch_ == "degenerate_a_zero"
        assert est.pmf_.tolist() == est.empirical_.tolist()

    def test_get_params_and_clone(self):
        est = StackedGrenander(loss="l1")
        assert est.get_params() == {"loss": "l1"}
        twin = clone(est)
        assert twin.get_params() == {"loss": "l1"}
        est.set_params(loss="l2").fit([0, 1, 1])
        assert est.diagnostics_.loss == "l2"

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            StackedGrenander(loss="huber").fit([0, 1])
        with pytest.raises(ValueError):
            StackedGrenander().fit([4])
        with pytest.raises(ValueError):
            StackedGrenander().fit([-1, 2])

    def test_score_samples_match_fitted_pmf(self):
        est = StackedGrenander().fit([0, 0, 1, 2])
        logs = est.score_samples([0, 1, 2, 9])
        assert logs[0] == pytest.approx(np.log(est.pmf_[0]))
        assert logs[3] == -np.inf
        inside = est.score([0, 1])
        assert inside == pytest.approx(np.log(est.pmf_[0]) + np.log(est.pmf_[1]))

    def test_score_requires_fit(self):
        with pytest.raises(NotFittedError):
            StackedGrenander().score_samples([0])

    def test_confidence_band_method(self):
        est = StackedGrenander().fit([0, 0, 1, 1, 2, 0])
        band = est.confidence_band(0.05, 2000, 7)
        assert band.n == 6
        assert np.all(band.lower <= est.pmf_)
        assert np.all(est.pmf_ <= band.upper)


class TestDecreasingProjection:
    def test_projects_each_row(self):
        X = np.array([[0.2, 0.5, 0.3], [0.5, 0.3, 0.2]])
        out = DecreasingProjection().fit_transform(X)
        assert np.allclose(out[0], [0.35, 0.35, 0.3])
        assert out[1].tolist() == [0.5, 0.3, 0.2]
        assert np.all(np.diff(out, axis=1) <= 0)

    def test_transform_requires_fit(self):
        with pytest.raises(NotFittedError):
            DecreasingProjection().transform([[1.0, 0.5]])

    def test_feature_count_is_checked(self):
        proj = DecreasingProjection().fit([[1.0, 0.5, 0.2]])
        with pytest.raises(ValueError):
            proj.transform([[1.0, 0.5]])

    def test_composes_in_a_pipeline(self):
        pipeline = make_pipeline(DecreasingProjection())
        out = pipeline.fit_transform(np.array([[0.1, 0.2, 0.3]]))
        assert np.allclose(out, [[0.2, 0.2, 0.2]])

    def test_clone_roundtrip(self):
        assert clone(DecreasingProjection()).get_params() == {}
