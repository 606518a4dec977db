"""Single-hidden-layer perceptron regressor trained by full-batch gradient descent.

The network is deliberately small: one sigmoid hidden layer and a linear
output unit, trained on mean squared error over standardized inputs and
target. Standardization statistics are stored on the model so prediction
works in original units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DivergenceError, InsufficientDataError
from .base import Dataset, MlpModel


@dataclass(frozen=True, slots=True)
class MlpConfig:
    hidden_units: int = 8
    epochs: int = 2000
    learning_rate: float = 0.01
    seed: int = 0
    patience: int = 50

    def __post_init__(self) -> None:
        if self.hidden_units < 1:
            raise ValueError("hidden_units must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be positive")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.patience < 1:
            raise ValueError("patience must be positive")


def sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    positive = z >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-z[positive]))
    exp_z = np.exp(z[~positive])
    out[~positive] = exp_z / (1.0 + exp_z)
    return out


@dataclass(slots=True)
class _Params:
    w_hidden: np.ndarray  # (n_features, hidden)
    b_hidden: np.ndarray  # (hidden,)
    w_out: np.ndarray  # (hidden,)
    b_out: float

    def copy(self) -> "_Params":
        return _Params(
            self.w_hidden.copy(), self.b_hidden.copy(), self.w_out.copy(), self.b_out
        )


def _init_params(n_features: int, hidden: int, seed: int) -> _Params:
    rng = np.random.default_rng(seed)
    scale_hidden = 1.0 / np.sqrt(n_features)
    scale_out = 1.0 / np.sqrt(hidden)
    return _Params(
        w_hidden=rng.uniform(-scale_hidden, scale_hidden, size=(n_features, hidden)),
        b_hidden=np.zeros(hidden),
        w_out=rng.uniform(-scale_out, scale_out, size=hidden),
        b_out=0.0,
    )


def loss_and_gradients(
    params: _Params, X: np.ndarray, y: np.ndarray
) -> tuple[float, _Params]:
    """Mean squared error and its gradients with respect to every parameter.

    ``X`` and ``y`` are assumed to be standardized already; the function is a
    pure map from parameters to (loss, gradients) so it can be checked against
    finite differences.
    """
    n = y.size
    hidden_in = X @ params.w_hidden + params.b_hidden
    hidden_out = sigmoid(hidden_in)
    prediction = hidden_out @ params.w_out + params.b_out
    residual = prediction - y
    loss = float(residual @ residual) / n

    d_prediction = 2.0 * residual / n
    grad_w_out = hidden_out.T @ d_prediction
    grad_b_out = float(d_prediction.sum())
    d_hidden = np.outer(d_prediction, params.w_out) * hidden_out * (1.0 - hidden_out)
    grad_w_hidden = X.T @ d_hidden
    grad_b_hidden = d_hidden.sum(axis=0)
    gradients = _Params(grad_w_hidden, grad_b_hidden, grad_w_out, grad_b_out)
    return loss, gradients


def _standardize(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mean = values.mean(axis=0)
    std = values.std(axis=0)
    std = np.where(std == 0, 1.0, std)
    return mean, std


def train_mlp(data: Dataset, config: MlpConfig | None = None) -> MlpModel:
    """Train the network; deterministic for a fixed dataset and seed."""
    config = config or MlpConfig()
    if len(data) < 2:
        raise InsufficientDataError(f"mlp needs at least 2 rows, got {len(data)}")

    x_mean, x_std = _standardize(data.features)
    y_mean_arr, y_std_arr = _standardize(data.target.reshape(-1, 1))
    y_mean = float(y_mean_arr[0])
    y_std = float(y_std_arr[0])
    X = (data.features - x_mean) / x_std
    y = (data.target - y_mean) / y_std

    params = _init_params(X.shape[1], config.hidden_units, config.seed)
    best = params.copy()
    best_loss = np.inf
    stale_epochs = 0
    lr = config.learning_rate

    # overflow on a diverging run is reported through DivergenceError below,
    # so the transient numpy warnings carry no extra information
    with np.errstate(over="ignore", invalid="ignore"):
        for epoch in range(config.epochs):
            loss, gradients = loss_and_gradients(params, X, y)
            if not np.isfinite(loss):
                raise DivergenceError(f"training loss became non-finite at epoch {epoch}")
            if loss < best_loss:
                best_loss = loss
                best = params.copy()
                stale_epochs = 0
            else:
                stale_epochs += 1
                if stale_epochs >= config.patience:
                    break
            params.w_hidden -= lr * gradients.w_hidden
            params.b_hidden -= lr * gradients.b_hidden
            params.w_out -= lr * gradients.w_out
            params.b_out -= lr * gradients.b_out

    return MlpModel(
        w_hidden=best.w_hidden,
        b_hidden=best.b_hidden,
        w_out=best.w_out,
        b_out=best.b_out,
        x_mean=x_mean,
        x_std=x_std,
        y_mean=y_mean,
        y_std=y_std,
        seed=config.seed,
    )
