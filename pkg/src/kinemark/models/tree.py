"""CART decision trees (Gini for classification, squared error for regression)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._grow import GINI, grow

UNLIMITED_DEPTH = 1 << 30


def _seed32(seed) -> int:
    return int(seed) % (1 << 32)


def normalized(importance: np.ndarray) -> np.ndarray:
    total = importance.sum()
    if total <= 0:
        return np.zeros_like(importance)
    return importance / total


@dataclass
class TreeStructure:
    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray
    n_node: np.ndarray
    impurity: np.ndarray
    importance: np.ndarray

    @classmethod
    def fit(cls, X, y, criterion=GINI, max_depth=None, min_leaf=1, max_features=None, seed=0,
            rows=None):
        X = np.ascontiguousarray(X, dtype=np.float64)
        y = np.ascontiguousarray(y, dtype=np.float64)
        n, p = X.shape
        rows = np.arange(n) if rows is None else np.ascontiguousarray(rows, dtype=np.int64)
        depth = UNLIMITED_DEPTH if max_depth is None else int(max_depth)
        k = p if max_features is None else int(max_features)
        return cls(*grow(X, y, rows, criterion, depth, int(min_leaf), k, _seed32(seed)))

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    @property
    def depth(self) -> int:
        d = np.zeros(self.n_nodes, dtype=np.int64)
        for i in range(self.n_nodes):
            if self.feature[i] >= 0:
                d[self.left[i]] = d[self.right[i]] = d[i] + 1
        return int(d.max())

    def apply(self, X) -> np.ndarray:
        """Leaf index reached by every row of ``X``."""
        X = np.asarray(X, dtype=np.float64)
        rows = np.arange(X.shape[0])
        node = np.zeros(X.shape[0], dtype=np.int64)
        while True:
            f = self.feature[node]
            inner = f >= 0
            if not inner.any():
                return node
            go_left = X[rows, np.where(inner, f, 0)] <= self.threshold[node]
            node = np.where(inner, np.where(go_left, self.left[node], self.right[node]), node)

    def predict_value(self, X) -> np.ndarray:
        return self.value[self.apply(X)]

    def get_state(self) -> dict:
        return {k: getattr(self, k).tolist() for k in self.__dataclass_fields__}

    @classmethod
    def from_state(cls, state: dict) -> "TreeStructure":
        ints = {"feature", "left", "right", "n_node"}
        return cls(**{k: np.asarray(v, dtype=np.int64 if k in ints else np.float64)
                      for k, v in state.items()})


class DecisionTree:
    """Binary CART classifier; the score is the class-1 fraction of the leaf."""

    kind = "DecisionTree"
    threshold = 0.5

    def __init__(self, max_depth=8, min_samples_leaf=2, max_features=None, seed=0):
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.seed = seed
        self.tree_: TreeStructure | None = None

    def fit(self, X, y):
        self.tree_ = TreeStructure.fit(X, y, GINI, self.max_depth, self.min_samples_leaf,
                                       self.max_features, self.seed)
        return self

    def decision_function(self, X):
        return self.tree_.predict_value(X)

    def predict(self, X):
        return (self.decision_function(X) >= self.threshold).astype(np.int64)

    @property
    def feature_importances_(self):
        imp = normalized(self.tree_.importance)
        if not imp.any():
            return np.full(len(imp), 1.0 / len(imp))
        return imp

    def get_state(self):
        return {"tree": self.tree_.get_state()}

    def set_state(self, state):
        self.tree_ = TreeStructure.from_state(state["tree"])

