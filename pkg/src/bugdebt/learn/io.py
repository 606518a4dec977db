"""Versioned JSON persistence for trained models.

Floats survive the round trip bit-exactly (JSON encodes them via ``repr``),
so a model saved and reloaded produces identical predictions.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from ..errors import ModelLoadError
from .base import (
    LinearModel,
    MeanLeaf,
    MlpModel,
    ModelKind,
    Split,
    TrainedModel,
    TreeModel,
    TreeNode,
)

FORMAT_VERSION = 1


def _node_to_obj(node: TreeNode) -> dict[str, Any]:
    if isinstance(node, Split):
        return {
            "node": "split",
            "feature": node.feature,
            "threshold": node.threshold,
            "left": _node_to_obj(node.left),
            "right": _node_to_obj(node.right),
        }
    if isinstance(node, LinearModel):
        return {
            "node": "linear",
            "weights": node.weights.tolist(),
            "intercept": node.intercept,
        }
    return {"node": "mean", "value": node.value}


def model_to_obj(model: TrainedModel) -> dict[str, Any]:
    if isinstance(model, LinearModel):
        params: dict[str, Any] = {
            "weights": model.weights.tolist(),
            "intercept": model.intercept,
        }
        norm = None
    elif isinstance(model, TreeModel):
        params = {"n_features": model.n_features, "root": _node_to_obj(model.root)}
        norm = None
    elif isinstance(model, MlpModel):
        params = {
            "w_hidden": model.w_hidden.tolist(),
            "b_hidden": model.b_hidden.tolist(),
            "w_out": model.w_out.tolist(),
            "b_out": model.b_out,
        }
        norm = {
            "x_mean": model.x_mean.tolist(),
            "x_std": model.x_std.tolist(),
            "y_mean": model.y_mean,
            "y_std": model.y_std,
        }
    else:
        raise ValueError(f"cannot serialize model of type {type(model).__name__}")
    return {
        "format_version": FORMAT_VERSION,
        "kind": model.kind.value,
        "seed": model.seed,
        "norm": norm,
        "params": params,
    }


def _fail(reason: str) -> ModelLoadError:
    return ModelLoadError(f"invalid model file: {reason}")


def _get(obj: dict[str, Any], key: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise _fail(f"missing key {key!r}")
    return obj[key]


def _float_array(value: Any, shape_hint: str) -> np.ndarray:
    try:
        array = np.asarray(value, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise _fail(f"{shape_hint} is not numeric") from exc
    if not np.isfinite(array).all():
        raise _fail(f"{shape_hint} contains non-finite values")
    return array


def _float_scalar(value: Any, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(f"{name} is not a number")
    result = float(value)
    if not math.isfinite(result):
        raise _fail(f"{name} is not finite")
    return result


def _node_from_obj(obj: Any, n_features: int) -> TreeNode:
    tag = _get(obj, "node")
    if tag == "split":
        feature = _get(obj, "feature")
        if not isinstance(feature, int) or isinstance(feature, bool):
            raise _fail("split feature is not an integer")
        if not 0 <= feature < n_features:
            raise _fail(f"split feature {feature} out of range")
        return Split(
            feature=feature,
            threshold=_float_scalar(_get(obj, "threshold"), "split threshold"),
            left=_node_from_obj(_get(obj, "left"), n_features),
            right=_node_from_obj(_get(obj, "right"), n_features),
        )
    if tag == "linear":
        weights = _float_array(_get(obj, "weights"), "leaf weights")
        if weights.ndim != 1 or weights.size != n_features:
            raise _fail("leaf weights have the wrong shape")
        return LinearModel(
            weights=weights,
            intercept=_float_scalar(_get(obj, "intercept"), "leaf intercept"),
        )
    if tag == "mean":
        return MeanLeaf(value=_float_scalar(_get(obj, "value"), "leaf value"))
    raise _fail(f"unknown node tag {tag!r}")


def model_from_obj(obj: Any) -> TrainedModel:
    if not isinstance(obj, dict):
        raise _fail("top level is not an object")
    version = _get(obj, "format_version")
    if version != FORMAT_VERSION:
        raise _fail(f"unsupported format_version {version!r}")
    kind_value = _get(obj, "kind")
    try:
        kind = ModelKind(kind_value)
    except ValueError as exc:
        raise _fail(f"unknown model kind {kind_value!r}") from exc
    params = _get(obj, "params")

    if kind is ModelKind.LINEAR:
        weights = _float_array(_get(params, "weights"), "weights")
        if weights.ndim != 1:
            raise _fail("weights must be one-dimensional")
        return LinearModel(
            weights=weights,
            intercept=_float_scalar(_get(params, "intercept"), "intercept"),
        )

    if kind is ModelKind.MODEL_TREE:
        n_features = _get(params, "n_features")
        if not isinstance(n_features, int) or isinstance(n_features, bool) or n_features < 1:
            raise _fail("n_features must be a positive integer")
        root = _node_from_obj(_get(params, "root"), n_features)
        return TreeModel(root=root, n_features=n_features)

    norm = _get(obj, "norm")
    seed = _get(obj, "seed")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise _fail("seed must be an integer")
    w_hidden = _float_array(_get(params, "w_hidden"), "w_hidden")
    b_hidden = _float_array(_get(params, "b_hidden"), "b_hidden")
    w_out = _float_array(_get(params, "w_out"), "w_out")
    if w_hidden.ndim != 2:
        raise _fail("w_hidden must be two-dimensional")
    hidden = w_hidden.shape[1]
    if b_hidden.shape != (hidden,) or w_out.shape != (hidden,):
        raise _fail("hidden layer shapes are inconsistent")
    x_mean = _float_array(_get(norm, "x_mean"), "x_mean")
    x_std = _float_array(_get(norm, "x_std"), "x_std")
    if x_mean.shape != (w_hidden.shape[0],) or x_std.shape != (w_hidden.shape[0],):
        raise _fail("normalization shapes do not match the input layer")
    if (x_std == 0).any():
        raise _fail("x_std contains zeros")
    y_std = _float_scalar(_get(norm, "y_std"), "y_std")
    if y_std == 0:
        raise _fail("y_std is zero")
    return MlpModel(
        w_hidden=w_hidden,
        b_hidden=b_hidden,
        w_out=w_out,
        b_out=_float_scalar(_get(params, "b_out"), "b_out"),
        x_mean=x_mean,
        x_std=x_std,
        y_mean=_float_scalar(_get(norm, "y_mean"), "y_mean"),
        y_std=y_std,
        seed=seed,
    )


def save_model(model: TrainedModel, path: str | Path) -> None:
    payload = json.dumps(model_to_obj(model), indent=2)
    Path(path).write_text(payload + "\n", encoding="utf-8")


def load_model(path: str | Path) -> TrainedModel:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _fail(f"not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    return model_from_obj(obj)
