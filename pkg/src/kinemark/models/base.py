"""Model roster, training entry point and JSON serialization."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from ..errors import ConfigError, NonFiniteInput, SchemaMismatch, SingleClassTraining
from .ensemble import GradientBoosting, RandomForest
from .linear import LinearSVM, LogisticRegression
from .neighbors import KNearestNeighbors
from .tree import DecisionTree

MODEL_FORMAT = "kinemark.model"
MODEL_VERSION = 1

ESTIMATORS = {
    "LogisticRegression": LogisticRegression,
    "DecisionTree": DecisionTree,
    "RandomForest": RandomForest,
    "GradientBoosting": GradientBoosting,
    "KNearestNeighbors": KNearestNeighbors,
    "SupportVectorMachine": LinearSVM,
}
MODEL_KINDS = tuple(ESTIMATORS)

_COUNTS = {"max_epochs", "epochs", "n_trees", "n_stages", "k", "min_samples_leaf", "batch_size"}
_RATES = {"learning_rate"}


@dataclass(frozen=True)
class ModelSpec:
    kind: str
    hyperparameters: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ESTIMATORS:
            raise ConfigError(f"unknown model kind {self.kind!r}; choose from {MODEL_KINDS}")
        allowed = set(ESTIMATORS[self.kind]().__dict__) - {"seed"}
        for key, val in self.hyperparameters.items():
            if key not in allowed or key.endswith("_"):
                raise ConfigError(f"{self.kind} has no hyperparameter {key!r}")
            if key in _COUNTS and not (isinstance(val, (int, np.integer)) and val > 0):
                raise ConfigError(f"{key} must be a positive integer, got {val!r}")
            if key in _RATES and not (0 < val <= 1):
                raise ConfigError(f"{key} must lie in (0, 1], got {val!r}")
            if key == "max_depth" and val is not None and not (isinstance(val, int) and val > 0):
                raise ConfigError(f"max_depth must be a positive integer or None, got {val!r}")
            if key in {"l2", "tol", "step"} and not val > 0:
                raise ConfigError(f"{key} must be positive, got {val!r}")

    def build(self):
        return ESTIMATORS[self.kind](**self.hyperparameters, seed=self.seed)


@dataclass
class TrainedModel:
    spec: ModelSpec
    estimator: Any
    feature_names: list[str] | None
    n_features: int

    @property
    def feature_importances(self) -> np.ndarray | None:
        return self.estimator.feature_importances_


def _check_xy(X, y):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("X must be a non-empty 2-D array")
    if len(y) != X.shape[0]:
        raise ValueError("X and y lengths differ")
    if not np.isfinite(X).all():
        raise NonFiniteInput("training matrix contains non-finite values")
    classes = set(np.unique(y).tolist())
    if not classes <= {0, 1}:
        raise ValueError(f"labels must be 0/1, got {sorted(classes)}")
    if len(classes) < 2:
        raise SingleClassTraining("training data holds a single class")
    return X, y.astype(np.int64)


def train(spec: ModelSpec, X, y, feature_names: Sequence[str] | None = None) -> TrainedModel:
    X, y = _check_xy(X, y)
    if feature_names is not None and len(feature_names) != X.shape[1]:
        raise SchemaMismatch("feature_names length does not match X")
    est = spec.build().fit(X, y)
    names = list(feature_names) if feature_names is not None else None
    return TrainedModel(spec, est, names, X.shape[1])


def _check_schema(model: TrainedModel, X, feature_names):
    X = np.asarray(X, dtype=np.float64)
    if X.size == 0:
        return X.reshape(0, model.n_features)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise SchemaMismatch(f"expected {model.n_features} columns, got {X.shape}")
    if feature_names is not None and model.feature_names is not None \
            and list(feature_names) != model.feature_names:
        raise SchemaMismatch("feature names or order differ from training")
    return X


def predict_score(model: TrainedModel, X, feature_names=None) -> np.ndarray:
    X = _check_schema(model, X, feature_names)
    if X.shape[0] == 0:
        return np.empty(0)
    return model.estimator.decision_function(X)


def predict(model: TrainedModel, X, feature_names=None) -> np.ndarray:
    X = _check_schema(model, X, feature_names)
    if X.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    return model.estimator.predict(X)


def dumps(model: TrainedModel) -> str:
    return json.dumps({
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "kind": model.spec.kind,
        "hyperparameters": model.spec.hyperparameters,
        "seed": model.spec.seed,
        "feature_names": model.feature_names,
        "n_features": model.n_features,
        "state": model.estimator.get_state(),
    })


def loads(blob: str) -> TrainedModel:
    doc = json.loads(blob)
    if doc.get("format") != MODEL_FORMAT:
        raise ValueError("not a serialized model")
    if doc.get("version") != MODEL_VERSION:
        raise ValueError(f"unsupported model version {doc.get('version')!r}")
    spec = ModelSpec(doc["kind"], doc["hyperparameters"], doc["seed"])
    est = spec.build()
    est.set_state(doc["state"])
    return TrainedModel(spec, est, doc["feature_names"], doc["n_features"])
