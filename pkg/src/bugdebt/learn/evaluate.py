"""Cross-validated evaluation of the regression models.

Folds are formed by a seeded permutation so results are reproducible, and the
two reported metrics (Pearson correlation and root relative squared error)
are computed once over the pooled out-of-fold predictions rather than
averaged across folds.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ..errors import ConstantInputError, FoldTrainingError, InsufficientDataError
from ..stats import pearson
from .base import Dataset, ModelKind, TrainedModel
from .linear import train_linear
from .mlp import MlpConfig, train_mlp
from .tree import TreeConfig, train_model_tree

Trainer = Callable[[Dataset], TrainedModel]


@dataclass(frozen=True, slots=True)
class EvalMetrics:
    model: str
    k: int
    seed: int
    correlation_coefficient: float
    rrse_percent: float


def kfold_split(n: int, k: int, seed: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Shuffled k-fold index split; fold sizes differ by at most one row."""
    if n < 2:
        raise ValueError(f"need at least 2 rows to split, got {n}")
    if not 2 <= k <= n:
        raise ValueError(f"fold count must be between 2 and {n}, got {k}")
    order = np.random.default_rng(seed).permutation(n)
    folds = np.array_split(order, k)
    splits = []
    for i, test in enumerate(folds):
        train = np.concatenate([fold for j, fold in enumerate(folds) if j != i])
        splits.append((np.sort(train), np.sort(test)))
    return splits


def rrse(predicted: np.ndarray, actual: np.ndarray) -> float:
    """Root relative squared error as a percentage of the mean predictor."""
    predicted = np.asarray(predicted, dtype=np.float64)
    actual = np.asarray(actual, dtype=np.float64)
    if predicted.ndim != 1 or actual.ndim != 1:
        raise ValueError("rrse expects one-dimensional arrays")
    if predicted.size != actual.size:
        raise ValueError(
            f"length mismatch: {predicted.size} predictions vs {actual.size} actuals"
        )
    if predicted.size < 2:
        raise ValueError("rrse needs at least 2 values")
    if np.ptp(actual) == 0:
        raise ConstantInputError("actual values are constant; rrse is undefined")
    residual = predicted - actual
    spread = actual - actual.mean()
    return 100.0 * float(np.sqrt((residual @ residual) / (spread @ spread)))


def _fold_trainer(
    model: Union[ModelKind, Trainer],
    seed: int,
    fold: int,
    k: int,
    tree_config: TreeConfig | None,
    mlp_config: MlpConfig | None,
) -> Trainer:
    if callable(model) and not isinstance(model, ModelKind):
        return model
    if model is ModelKind.LINEAR:
        return train_linear
    if model is ModelKind.MODEL_TREE:
        config = tree_config or TreeConfig()
        return lambda data: train_model_tree(data, config)
    if model is ModelKind.MLP:
        base = mlp_config or MlpConfig()
        fold_config = dataclasses.replace(base, seed=seed * k + fold)
        return lambda data: train_mlp(data, fold_config)
    raise ValueError(f"unknown model kind: {model!r}")


def cross_validate(
    data: Dataset,
    model: Union[ModelKind, Trainer],
    k: int = 10,
    seed: int = 0,
    tree_config: TreeConfig | None = None,
    mlp_config: MlpConfig | None = None,
) -> EvalMetrics:
    """Pooled k-fold evaluation; every row is predicted exactly once."""
    n = len(data)
    if n < k:
        raise InsufficientDataError(f"{k}-fold split needs at least {k} rows, got {n}")
    predictions = np.empty(n, dtype=np.float64)
    for fold, (train_idx, test_idx) in enumerate(kfold_split(n, k, seed)):
        trainer = _fold_trainer(model, seed, fold, k, tree_config, mlp_config)
        try:
            trained = trainer(data.subset(train_idx))
        except Exception as cause:
            raise FoldTrainingError(fold, cause) from cause
        predictions[test_idx] = trained.predict_many(data.features[test_idx])
    name = model.value if isinstance(model, ModelKind) else getattr(model, "__name__", "custom")
    return EvalMetrics(
        model=name,
        k=k,
        seed=seed,
        correlation_coefficient=pearson(predictions, data.target),
        rrse_percent=rrse(predictions, data.target),
    )


def metrics_to_json(metrics: EvalMetrics) -> str:
    payload = {
        "model": metrics.model,
        "k": metrics.k,
        "seed": metrics.seed,
        "correlation_coefficient": metrics.correlation_coefficient,
        "rrse_percent": metrics.rrse_percent,
    }
    return json.dumps(payload, indent=2) + "\n"
