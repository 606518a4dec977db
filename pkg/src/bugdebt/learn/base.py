"""Dataset container and fitted-model types for fix-time prediction."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..features import ProductAttributes
from ..model import ProductKey

N_FEATURES = 9


class ModelKind(str, enum.Enum):
    LINEAR = "linear"
    MODEL_TREE = "mtree"
    MLP = "mlp"


def _frozen(array: np.ndarray, dtype=np.float64) -> np.ndarray:
    out = np.array(array, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Dataset:
    """Feature matrix (n x 9, canonical column order), target vector, row keys."""

    features: np.ndarray
    target: np.ndarray
    keys: tuple[ProductKey, ...] = ()

    def __post_init__(self) -> None:
        features = _frozen(self.features)
        target = _frozen(self.target)
        if features.ndim != 2 or features.shape[1] != N_FEATURES:
            raise ValueError(f"features must be (n, {N_FEATURES}), got {features.shape}")
        if target.ndim != 1 or target.shape[0] != features.shape[0]:
            raise ValueError("target length must match the feature row count")
        keys = self.keys or tuple(
            ProductKey(f"row-{i}", "-") for i in range(features.shape[0])
        )
        if len(keys) != features.shape[0]:
            raise ValueError("row key count must match the feature row count")
        if not (np.isfinite(features).all() and np.isfinite(target).all()):
            raise ValueError("dataset contains non-finite values")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "keys", keys)

    def __len__(self) -> int:
        return self.features.shape[0]

    def subset(self, indices: np.ndarray | Sequence[int]) -> Dataset:
        idx = np.asarray(indices, dtype=np.intp)
        return Dataset(
            features=self.features[idx],
            target=self.target[idx],
            keys=tuple(self.keys[i] for i in idx),
        )

    @classmethod
    def from_rows(cls, rows: Sequence[ProductAttributes]) -> Dataset:
        return cls(
            features=np.array([row.attribute_values() for row in rows], dtype=np.float64),
            target=np.array([row.avg_fix_time for row in rows], dtype=np.float64),
            keys=tuple(row.key for row in rows),
        )


@dataclass(frozen=True)
class LinearModel:
    """y = weights . x + intercept, on raw feature scales."""

    weights: np.ndarray
    intercept: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _frozen(self.weights))

    @property
    def kind(self) -> ModelKind:
        return ModelKind.LINEAR

    @property
    def n_features(self) -> int:
        return self.weights.shape[0]

    @property
    def seed(self) -> int | None:
        return None

    def predict(self, features: np.ndarray) -> float:
        return float(np.dot(self.weights, np.asarray(features, dtype=np.float64)) + self.intercept)

    def predict_many(self, features: np.ndarray) -> np.ndarray:
        return np.asarray(features, dtype=np.float64) @ self.weights + self.intercept


@dataclass(frozen=True)
class MeanLeaf:
    """Constant-prediction leaf used when a partition is too small to fit a line."""

    value: float

    def predict_many(self, features: np.ndarray) -> np.ndarray:
        return np.full(np.asarray(features).shape[0], self.value, dtype=np.float64)


@dataclass(frozen=True)
class Split:
    feature: int
    threshold: float
    left: "TreeNode"
    right: "TreeNode"


TreeNode = Union[Split, LinearModel, MeanLeaf]


@dataclass(frozen=True)
class TreeModel:
    """Binary regression tree with linear or constant models in its leaves."""

    root: TreeNode
    n_features: int = N_FEATURES

    @property
    def kind(self) -> ModelKind:
        return ModelKind.MODEL_TREE

    @property
    def seed(self) -> int | None:
        return None

    def _leaf_for(self, x: np.ndarray) -> LinearModel | MeanLeaf:
        node = self.root
        while isinstance(node, Split):
            node = node.left if x[node.feature] <= node.threshold else node.right
        return node

    def predict(self, features: np.ndarray) -> float:
        x = np.asarray(features, dtype=np.float64)
        leaf = self._leaf_for(x)
        if isinstance(leaf, MeanLeaf):
            return leaf.value
        return leaf.predict(x)

    def predict_many(self, features: np.ndarray) -> np.ndarray:
        rows = np.asarray(features, dtype=np.float64)
        return np.array([self.predict(row) for row in rows], dtype=np.float64)


@dataclass(frozen=True)
class MlpModel:
    """One-hidden-layer sigmoid network with a linear output.

    Normalization constants are stored with the weights, so predictions take
    raw-scale features and return raw-scale targets.
    """

    w_hidden: np.ndarray  # (n_features, hidden)
    b_hidden: np.ndarray  # (hidden,)
    w_out: np.ndarray  # (hidden,)
    b_out: float
    x_mean: np.ndarray
    x_std: np.ndarray
    y_mean: float
    y_std: float
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("w_hidden", "b_hidden", "w_out", "x_mean", "x_std"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def kind(self) -> ModelKind:
        return ModelKind.MLP

    @property
    def n_features(self) -> int:
        return self.w_hidden.shape[0]

    def predict_many(self, features: np.ndarray) -> np.ndarray:
        from .mlp import sigmoid

        rows = np.asarray(features, dtype=np.float64)
        scaled = (rows - self.x_mean) / self.x_std
        hidden = sigmoid(scaled @ self.w_hidden + self.b_hidden)
        out = hidden @ self.w_out + self.b_out
        return out * self.y_std + self.y_mean

    def predict(self, features: np.ndarray) -> float:
        return float(self.predict_many(np.asarray(features, dtype=np.float64)[None, :])[0])


TrainedModel = Union[LinearModel, TreeModel, MlpModel]


def predict(model: TrainedModel, features: Sequence[float] | np.ndarray) -> float:
    """Predict average fix time (days) for one raw-scale feature vector."""
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != model.n_features:
        raise ValueError(f"expected a feature vector of length {model.n_features}")
    if not np.isfinite(x).all():
        raise ValueError("features must be finite")
    return model.predict(x)
