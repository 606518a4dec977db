import numpy as np
import pytest

from bugdebt import Dataset, InsufficientDataError, train_linear
from bugdebt.learn import DEFAULT_RIDGE, ridge_least_squares
from helpers import ridge_oracle


def _planted(rng, n=60, noise=0.0):
    X = rng.normal(size=(n, 9))
    weights = rng.uniform(-3, 3, size=9)
    intercept = float(rng.uniform(-5, 5))
    y = X @ weights + intercept
    if noise:
        y = y + rng.normal(scale=noise, size=n)
    return X, y, weights, intercept


class TestRidgeLeastSquares:
    def test_recovers_noiseless_coefficients(self):
        rng = np.random.default_rng(1)
        X, y, weights, intercept = _planted(rng)
        got_w, got_b = ridge_least_squares(X, y)
        assert np.allclose(got_w, weights, atol=1e-6)
        assert got_b == pytest.approx(intercept, abs=1e-6)

    def test_matches_normal_equation_oracle(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            X, y, _, _ = _planted(rng, n=int(rng.integers(15, 80)), noise=1.0)
            got_w, got_b = ridge_least_squares(X, y)
            want_w, want_b = ridge_oracle(X, y, DEFAULT_RIDGE)
            assert np.allclose(got_w, want_w, atol=1e-8)
            assert got_b == pytest.approx(want_b, abs=1e-8)

    def test_duplicated_column_is_rescued_by_the_ridge(self):
        rng = np.random.default_rng(3)
        X, y, _, _ = _planted(rng, noise=0.5)
        X[:, 8] = X[:, 0]  # exactly collinear
        got_w, got_b = ridge_least_squares(X, y)
        predictions = X @ got_w + got_b
        assert np.isfinite(predictions).all()
        # the fit is still optimal for the ridge objective
        want_w, want_b = ridge_oracle(X, y, DEFAULT_RIDGE)
        assert np.allclose(X @ want_w + want_b, predictions, atol=1e-6)


class TestTrainLinear:
    def test_needs_more_rows_than_features(self):
        rng = np.random.default_rng(4)
        X, y, _, _ = _planted(rng, n=9)
        with pytest.raises(InsufficientDataError, match="more than 9 rows"):
            train_linear(Dataset(features=X, target=y))

    def test_model_predicts_planted_values(self):
        rng = np.random.default_rng(5)
        X, y, _, _ = _planted(rng)
        model = train_linear(Dataset(features=X, target=y))
        assert np.allclose(model.predict_many(X), y, atol=1e-6)
        assert model.predict(X[0]) == pytest.approx(y[0], abs=1e-6)

    def test_predict_rejects_wrong_arity(self):
        rng = np.random.default_rng(6)
        X, y, _, _ = _planted(rng)
        model = train_linear(Dataset(features=X, target=y))
        from bugdebt import predict
        with pytest.raises(ValueError, match="9"):
            predict(model, [1.0, 2.0])
