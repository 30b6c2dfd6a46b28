"""From-scratch binary classifiers and metrics."""
from .base import (
    ESTIMATORS,
    MODEL_KINDS,
    ModelSpec,
    TrainedModel,
    dumps,
    loads,
    predict,
    predict_score,
    train,
)
from .ensemble import GradientBoosting, RandomForest, log_loss
from .linear import LinearSVM, LogisticRegression, hinge_objective, logistic_gradient, logistic_loss
from .metrics import METRIC_NAMES, Metrics, compute_metrics
from .neighbors import KNearestNeighbors
from .tree import DecisionTree, TreeStructure

__all__ = [
    "DecisionTree", "ESTIMATORS", "GradientBoosting", "KNearestNeighbors", "LinearSVM",
    "LogisticRegression", "METRIC_NAMES", "MODEL_KINDS", "Metrics", "ModelSpec",
    "RandomForest", "TrainedModel", "TreeStructure", "compute_metrics", "dumps",
    "hinge_objective", "log_loss", "logistic_gradient", "logistic_loss", "loads", "predict",
    "predict_score", "train",
]
