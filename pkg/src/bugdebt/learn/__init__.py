"""Regression models over product attribute tables and their evaluation."""

from .base import (
    N_FEATURES,
    Dataset,
    LinearModel,
    MeanLeaf,
    MlpModel,
    ModelKind,
    Split,
    TrainedModel,
    TreeModel,
    TreeNode,
    predict,
)
from .evaluate import EvalMetrics, Trainer, cross_validate, kfold_split, metrics_to_json, rrse
from .io import load_model, model_from_obj, model_to_obj, save_model
from .linear import DEFAULT_RIDGE, ridge_least_squares, train_linear
from .mlp import MlpConfig, loss_and_gradients, sigmoid, train_mlp
from .tree import TreeConfig, train_model_tree

__all__ = [
    "N_FEATURES",
    "Dataset",
    "LinearModel",
    "MeanLeaf",
    "MlpModel",
    "ModelKind",
    "Split",
    "TrainedModel",
    "TreeModel",
    "TreeNode",
    "predict",
    "EvalMetrics",
    "Trainer",
    "cross_validate",
    "kfold_split",
    "metrics_to_json",
    "rrse",
    "load_model",
    "model_from_obj",
    "model_to_obj",
    "save_model",
    "DEFAULT_RIDGE",
    "ridge_least_squares",
    "train_linear",
    "MlpConfig",
    "loss_and_gradients",
    "sigmoid",
    "train_mlp",
    "TreeConfig",
    "train_model_tree",
]
