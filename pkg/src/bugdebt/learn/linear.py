"""Ordinary least squares with a tiny ridge guard for conditioning."""

from __future__ import annotations

import numpy as np

from ..errors import InsufficientDataError, SingularFitError
from .base import Dataset, LinearModel

DEFAULT_RIDGE = 1e-8
_GRADIENT_TOLERANCE = 1e-6


def ridge_least_squares(
    features: np.ndarray, target: np.ndarray, ridge: float = DEFAULT_RIDGE
) -> tuple[np.ndarray, float]:
    """Solve min ||y - Xw - b||^2 + ridge*||w||^2 (intercept unpenalized).

    Solved as an augmented least-squares system rather than via the normal
    equations, which keeps the conditioning of the original matrix.
    """
    n, p = features.shape
    design = np.hstack([features, np.ones((n, 1))])
    penalty = np.hstack([np.sqrt(ridge) * np.eye(p), np.zeros((p, 1))])
    stacked = np.vstack([design, penalty])
    padded = np.concatenate([target, np.zeros(p)])
    try:
        beta, *_ = np.linalg.lstsq(stacked, padded, rcond=None)
    except np.linalg.LinAlgError as exc:
        raise SingularFitError(f"least-squares solve failed: {exc}") from None
    return beta[:p], float(beta[p])


def train_linear(data: Dataset, ridge: float = DEFAULT_RIDGE) -> LinearModel:
    """Fit a least-squares linear model of average fix time.

    Requires more rows than features. After the solve, the optimality
    conditions are checked; a violation means the design matrix was
    rank-deficient beyond what the ridge term can rescue.
    """
    X, y = data.features, data.target
    n, p = X.shape
    if n <= p:
        raise InsufficientDataError(f"linear fit needs more than {p} rows, got {n}")
    weights, intercept = ridge_least_squares(X, y, ridge)

    residual = y - (X @ weights + intercept)
    gradient_w = X.T @ residual - ridge * weights
    gradient_b = float(residual.sum())
    scale = max(1.0, float(np.abs(X.T @ y).max()), float(abs(y.sum())))
    worst = max(float(np.abs(gradient_w).max()), abs(gradient_b))
    if not np.isfinite(worst) or worst > _GRADIENT_TOLERANCE * scale:
        raise SingularFitError(
            f"optimality residual {worst:.3e} exceeds {_GRADIENT_TOLERANCE:.0e} relative"
        )
    return LinearModel(weights=weights, intercept=intercept)
