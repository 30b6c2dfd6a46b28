"""Brute-force k-nearest-neighbour classifier."""
from __future__ import annotations

import numpy as np


class KNearestNeighbors:
    """Euclidean kNN voting.

    Distance ties go to the lower training row, and a tied vote goes to
    class 0, so ``predict`` is ``votes_for_1 > k/2``. The score is the class-1
    vote fraction.
    """

    kind = "KNearestNeighbors"
    threshold = 0.5

    def __init__(self, k=5, batch_size=256, seed=0):
        self.k = k
        self.batch_size = batch_size
        self.seed = seed
        self.X_ = None
        self.y_ = None

    def fit(self, X, y):
        self.X_ = np.array(X, dtype=np.float64)
        self.y_ = np.asarray(y, dtype=np.int64).copy()
        return self

    def kneighbors(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        k = min(self.k, len(self.X_))
        out = np.empty((X.shape[0], k), dtype=np.int64)
        for start in range(0, X.shape[0], self.batch_size):
            block = X[start:start + self.batch_size]
            diff = block[:, None, :] - self.X_[None, :, :]
            d2 = np.einsum("ijk,ijk->ij", diff, diff)
            out[start:start + len(block)] = np.argsort(d2, axis=1, kind="stable")[:, :k]
        return out

    def _votes(self, X):
        nn = self.kneighbors(X)
        return self.y_[nn].sum(axis=1), nn.shape[1]

    def decision_function(self, X):
        if len(X) == 0:
            return np.empty(0)
        votes, k = self._votes(X)
        return votes / k

    def predict(self, X):
        if len(X) == 0:
            return np.empty(0, dtype=np.int64)
        votes, k = self._votes(X)
        return (2 * votes > k).astype(np.int64)

    @property
    def feature_importances_(self):
        return None

    def get_state(self):
        return {"X": self.X_.tolist(), "y": self.y_.tolist()}

    def set_state(self, state):
        self.X_ = np.asarray(state["X"], dtype=np.float64).reshape(len(state["y"]), -1)
        self.y_ = np.asarray(state["y"], dtype=np.int64)
