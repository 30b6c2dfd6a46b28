"""Bagged random forest and logistic-loss gradient boosting."""
from __future__ import annotations

import math

import numpy as np
from scipy.special import expit

from ._grow import GINI, SSE
from .tree import TreeStructure, normalized


def _resolve_max_features(spec, p):
    if spec is None:
        return p
    if spec == "sqrt":
        return max(1, int(math.sqrt(p)))
    if isinstance(spec, float):
        return max(1, int(spec * p))
    return max(1, min(int(spec), p))


class RandomForest:
    """Bootstrap-aggregated Gini trees voting by majority.

    The score is the fraction of trees voting for class 1. Importances are the
    per-tree normalized impurity decreases averaged over trees and renormalized.
    """

    kind = "RandomForest"
    threshold = 0.5

    def __init__(self, n_trees=100, max_depth=8, min_samples_leaf=2, max_features="sqrt",
                 bootstrap=True, seed=0):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.seed = seed
        self.trees_: list[TreeStructure] = []
        self.n_features_ = 0

    def fit(self, X, y):
        X = np.ascontiguousarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        n, p = X.shape
        self.n_features_ = p
        k = _resolve_max_features(self.max_features, p)
        tree_seeds = np.random.default_rng(self.seed).integers(0, 2**32, size=self.n_trees)
        self.trees_ = []
        for ts in tree_seeds:
            rows = (np.random.default_rng(int(ts)).integers(0, n, size=n)
                    if self.bootstrap else None)
            self.trees_.append(TreeStructure.fit(X, y, GINI, self.max_depth,
                                                 self.min_samples_leaf, k, int(ts), rows))
        return self

    def decision_function(self, X):
        X = np.asarray(X, dtype=np.float64)
        votes = np.zeros(X.shape[0])
        for t in self.trees_:
            votes += t.predict_value(X) >= 0.5
        return votes / len(self.trees_)

    def predict(self, X):
        return (self.decision_function(X) >= self.threshold).astype(np.int64)

    @property
    def feature_importances_(self):
        total = np.zeros(self.n_features_)
        for t in self.trees_:
            total += normalized(t.importance)
        s = total.sum()
        if s <= 0:
            return np.full(self.n_features_, 1.0 / self.n_features_)
        return total / s

    def get_state(self):
        return {"n_features": self.n_features_, "trees": [t.get_state() for t in self.trees_]}

    def set_state(self, state):
        self.n_features_ = state["n_features"]
        self.trees_ = [TreeStructure.from_state(t) for t in state["trees"]]


def log_loss(y, raw):
    """Mean logistic loss of raw (log-odds) scores."""
    return float(np.mean(np.logaddexp(0.0, raw) - y * raw))


class GradientBoosting:
    """Friedman gradient boosting on the logistic loss with Newton leaf values.

    ``decision_function`` returns the raw additive score
    ``base + sum(stage outputs)``; class 1 is predicted when it is >= 0.
    """

    kind = "GradientBoosting"
    threshold = 0.0

    def __init__(self, n_stages=100, max_depth=3, learning_rate=0.1, min_samples_leaf=1,
                 seed=0):
        self.n_stages = n_stages
        self.max_depth = max_depth
        self.learning_rate = learning_rate
        self.min_samples_leaf = min_samples_leaf
        self.seed = seed
        self.base_ = 0.0
        self.stages_: list[TreeStructure] = []
        self.train_loss_: list[float] = []
        self.n_features_ = 0

    def fit(self, X, y):
        X = np.ascontiguousarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        self.n_features_ = X.shape[1]
        rate = y.mean()
        self.base_ = float(np.log(rate / (1.0 - rate)))
        raw = np.full(len(y), self.base_)
        self.stages_ = []
        self.train_loss_ = [log_loss(y, raw)]
        seeds = np.random.default_rng(self.seed).integers(0, 2**32, size=self.n_stages)
        for s in seeds:
            prob = expit(raw)
            residual = y - prob
            tree = TreeStructure.fit(X, residual, SSE, self.max_depth, self.min_samples_leaf,
                                     None, int(s))
            leaf = tree.apply(X)
            num = np.bincount(leaf, weights=residual, minlength=tree.n_nodes)
            den = np.bincount(leaf, weights=prob * (1.0 - prob), minlength=tree.n_nodes)
            tree.value = np.where(den > 1e-150, num / np.where(den > 1e-150, den, 1.0), 0.0)
            raw = raw + self.learning_rate * tree.value[leaf]
            self.stages_.append(tree)
            self.train_loss_.append(log_loss(y, raw))
        return self

    def stage_outputs(self, X) -> np.ndarray:
        """(n_stages, n_rows) contribution of each stage to the raw score."""
        X = np.asarray(X, dtype=np.float64)
        return np.array([self.learning_rate * t.predict_value(X) for t in self.stages_]
                        ).reshape(len(self.stages_), X.shape[0])

    def decision_function(self, X):
        X = np.asarray(X, dtype=np.float64)
        raw = np.full(X.shape[0], self.base_)
        for t in self.stages_:
            raw += self.learning_rate * t.predict_value(X)
        return raw

    def predict_proba(self, X):
        return expit(self.decision_function(X))

    def predict(self, X):
        return (self.decision_function(X) >= self.threshold).astype(np.int64)

    @property
    def feature_importances_(self):
        total = np.zeros(self.n_features_)
        for t in self.stages_:
            total += t.importance
        s = total.sum()
        if s <= 0:
            return np.full(self.n_features_, 1.0 / self.n_features_)
        return total / s

    def get_state(self):
        return {"n_features": self.n_features_, "base": self.base_,
                "train_loss": self.train_loss_,
                "stages": [t.get_state() for t in self.stages_]}

    def set_state(self, state):
        self.n_features_ = state["n_features"]
        self.base_ = state["base"]
        self.train_loss_ = list(state["train_loss"])
        self.stages_ = [TreeStructure.from_state(t) for t in state["stages"]]
