"""Binary regression tree with linear leaf models.

Splits maximize the standard-deviation reduction of the target:

    SDR = sd(node) - (n_left/n) * sd(left) - (n_right/n) * sd(right)

Growth stops when a side would fall under ``min_leaf`` rows or when the best
achievable reduction drops below ``sd_stop_fraction`` of the full training
target's standard deviation. Leaves with more than ``n_features + 1`` rows
carry a least-squares linear model of their partition; smaller (or
degenerate) leaves predict the partition mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InsufficientDataError, SingularFitError
from .base import Dataset, LinearModel, MeanLeaf, Split, TreeModel, TreeNode
from .linear import DEFAULT_RIDGE, ridge_least_squares


@dataclass(frozen=True, slots=True)
class TreeConfig:
    min_leaf: int = 4
    sd_stop_fraction: float = 0.05
    ridge: float = DEFAULT_RIDGE


@dataclass(frozen=True, slots=True)
class _Candidate:
    gain: float
    feature: int
    threshold: float
    left_order: np.ndarray
    right_order: np.ndarray


def _best_split(X: np.ndarray, y: np.ndarray, min_leaf: int) -> _Candidate | None:
    n = y.size
    parent_sd = float(np.std(y))
    best: _Candidate | None = None
    for feature in range(X.shape[1]):
        values = X[:, feature]
        order = np.argsort(values, kind="stable")
        sorted_values = values[order]
        sorted_y = y[order]
        cum = np.cumsum(sorted_y)
        cum_sq = np.cumsum(sorted_y * sorted_y)
        total, total_sq = cum[-1], cum_sq[-1]
        for i in range(min_leaf - 1, n - min_leaf):
            if sorted_values[i] == sorted_values[i + 1]:
                continue
            n_left = i + 1
            n_right = n - n_left
            mean_left = cum[i] / n_left
            mean_right = (total - cum[i]) / n_right
            var_left = max(0.0, cum_sq[i] / n_left - mean_left * mean_left)
            var_right = max(0.0, (total_sq - cum_sq[i]) / n_right - mean_right * mean_right)
            gain = (
                parent_sd
                - (n_left / n) * math.sqrt(var_left)
                - (n_right / n) * math.sqrt(var_right)
            )
            if best is None or gain > best.gain:
                threshold = float((sorted_values[i] + sorted_values[i + 1]) / 2.0)
                best = _Candidate(gain, feature, threshold, order[:n_left], order[n_left:])
    return best


def _fit_leaf(X: np.ndarray, y: np.ndarray, config: TreeConfig) -> LinearModel | MeanLeaf:
    if y.size > X.shape[1] + 1:
        try:
            weights, intercept = ridge_least_squares(X, y, config.ridge)
        except SingularFitError:
            weights, intercept = None, math.nan
        if weights is not None and np.isfinite(weights).all() and math.isfinite(intercept):
            return LinearModel(weights=weights, intercept=intercept)
    return MeanLeaf(value=float(np.mean(y)))


def _grow(X: np.ndarray, y: np.ndarray, config: TreeConfig, min_gain: float) -> TreeNode:
    if np.ptp(y) == 0:
        return MeanLeaf(value=float(y[0]))
    if y.size < 2 * config.min_leaf:
        return _fit_leaf(X, y, config)
    candidate = _best_split(X, y, config.min_leaf)
    if candidate is None or candidate.gain < min_gain:
        return _fit_leaf(X, y, config)
    left = _grow(X[candidate.left_order], y[candidate.left_order], config, min_gain)
    right = _grow(X[candidate.right_order], y[candidate.right_order], config, min_gain)
    return Split(feature=candidate.feature, threshold=candidate.threshold, left=left, right=right)


def train_model_tree(data: Dataset, config: TreeConfig | None = None) -> TreeModel:
    """Grow a regression tree over the dataset; requires 2*min_leaf rows."""
    config = config or TreeConfig()
    if len(data) < 2 * config.min_leaf:
        raise InsufficientDataError(
            f"model tree needs at least {2 * config.min_leaf} rows, got {len(data)}"
        )
    root_sd = float(np.std(data.target))
    min_gain = config.sd_stop_fraction * root_sd
    root = _grow(data.features, data.target, config, min_gain)
    return TreeModel(root=root, n_features=data.features.shape[1])
