"""Participant-level splitting, standardization, RFE selection and SMOTE.

The fixed order inside one repetition is::

    split -> standardize (fit on train) -> RFE (train) -> mask both -> SMOTE (train) -> model
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .corpus import Outcome
from .errors import (
    EmptyMatrix,
    InsufficientClass,
    LeakageError,
    MinorityTooSmall,
    SingleClassTraining,
)
from .models.ensemble import RandomForest


@dataclass(frozen=True)
class SplitPlan:
    train_participants: tuple[str, ...]
    test_participants: tuple[str, ...]
    test_fraction: float
    seed: int

    def role(self, participant_id: str) -> str:
        if participant_id in self.test_participants:
            return "test"
        if participant_id in self.train_participants:
            return "train"
        raise KeyError(participant_id)

    def to_csv(self, dest: Union[str, os.PathLike]) -> None:
        with open(dest, "w", newline="", encoding="utf-8") as fh:
            fh.write("participant_id,role\n")
            for pid in sorted(self.train_participants + self.test_participants):
                fh.write(f"{pid},{self.role(pid)}\n")

    @classmethod
    def from_csv(cls, src: Union[str, os.PathLike], test_fraction=float("nan"),
                 seed=-1) -> "SplitPlan":
        with open(src, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        train = tuple(r["participant_id"] for r in rows if r["role"] == "train")
        test = tuple(r["participant_id"] for r in rows if r["role"] == "test")
        return cls(train, test, test_fraction, seed)


def _n_test(n: int, fraction: float) -> int:
    # round half up, keeping at least one participant on each side
    return min(max(int(math.floor(fraction * n + 0.5)), 1), n - 1)


def split_participants(outcomes: Mapping[str, Union[Outcome, str]], test_fraction: float = 0.2,
                       seed: int = 0) -> SplitPlan:
    """Stratified participant-level train/test split.

    Each outcome stratum contributes round(test_fraction * size) participants
    to the test side (at least one, never all).
    """
    if not 0 < test_fraction < 1:
        raise ValueError("test_fraction must lie in (0, 1)")
    strata: dict[Outcome, list[str]] = {Outcome.WELL: [], Outcome.SICK: []}
    for pid, outcome in outcomes.items():
        strata[Outcome.parse(outcome)].append(str(pid))
    for outcome, members in strata.items():
        if len(members) < 2:
            raise InsufficientClass(f"{outcome.value} has {len(members)} participant(s); need 2")
    rng = np.random.default_rng(seed)
    train, test = [], []
    for outcome in (Outcome.WELL, Outcome.SICK):
        members = sorted(strata[outcome])
        order = rng.permutation(len(members))
        k = _n_test(len(members), test_fraction)
        test.extend(members[i] for i in order[:k])
        train.extend(members[i] for i in order[k:])
    return SplitPlan(tuple(sorted(train)), tuple(sorted(test)), test_fraction, seed)


def check_disjoint(train_ids, test_ids) -> None:
    """Raise LeakageError if any participant contributes rows to both sides."""
    shared = set(train_ids) & set(test_ids)
    if shared:
        raise LeakageError(f"participants in both train and test: {sorted(shared)}")


@dataclass(frozen=True)
class Standardizer:
    mean: np.ndarray
    std: np.ndarray

    def transform(self, X) -> np.ndarray:
        return apply_standardizer(X, self)


def fit_standardizer(X) -> Standardizer:
    """Per-column mean and population std; constant columns get std 0."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyMatrix("cannot fit a standardizer on an empty matrix")
    mean = X.mean(axis=0)
    std = np.where(np.ptp(X, axis=0) == 0, 0.0, X.std(axis=0))
    return Standardizer(mean, std)


def apply_standardizer(X, params: Standardizer) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    flat = params.std == 0
    out = (X - params.mean) / np.where(flat, 1.0, params.std)
    out[:, flat] = 0.0
    return out


@dataclass(frozen=True)
class FeatureMask:
    names: tuple[str, ...]
    k: int
    seed: int
    importances: tuple[float, ...] = ()

    def indices(self, all_names: Sequence[str]) -> np.ndarray:
        pos = {n: i for i, n in enumerate(all_names)}
        return np.array([pos[n] for n in self.names], dtype=np.int64)

    def to_text(self) -> str:
        return "".join(f"{n}\n" for n in self.names)

    def write(self, dest: Union[str, os.PathLike]) -> None:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(self.to_text())

    @classmethod
    def read(cls, src: Union[str, os.PathLike], seed: int = -1) -> "FeatureMask":
        with open(src, encoding="utf-8") as fh:
            names = tuple(line.rstrip("\n") for line in fh if line.strip())
        return cls(names, len(names), seed)


RFE_FOREST = dict(n_trees=100, max_depth=8, min_samples_leaf=2, max_features="sqrt")


def rfe_select(X, y, names: Sequence[str] | None = None, k: int = 50,
               step_fraction: float = 0.1, seed: int = 0, forest_params=None) -> FeatureMask:
    """Recursive feature elimination driven by random-forest impurity importance.

    Each round refits the forest on the surviving columns and drops the
    max(1, ceil(step_fraction * remaining)) least important ones (never going
    below ``k``; on equal importance the later column goes first). The mask
    lists survivors in their original column order.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    p = X.shape[1]
    names = list(names) if names is not None else [f"f{i}" for i in range(p)]
    if len(names) != p:
        raise ValueError("names must match the column count")
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(np.unique(y)) < 2:
        raise SingleClassTraining("RFE needs both classes in the training data")
    params = dict(RFE_FOREST if forest_params is None else forest_params)
    if k >= p:
        return FeatureMask(tuple(names), k, seed)

    alive = np.arange(p)
    importance = None
    while len(alive) > k:
        forest = RandomForest(seed=seed, **params).fit(X[:, alive], y)
        importance = forest.feature_importances_
        drop = min(max(1, math.ceil(step_fraction * len(alive))), len(alive) - k)
        # ascending importance, later column first among equals
        order = np.lexsort((-alive, importance))
        keep = np.sort(order[drop:])
        alive = alive[keep]
        importance = importance[keep]
    return FeatureMask(tuple(names[i] for i in alive), k, seed,
                       tuple(float(v) for v in importance))


def smote(X, y, k_neighbors: int = 5, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Oversample the minority class to parity.

    Each synthetic row is ``x_i + u * (x_nn - x_i)`` for a uniformly drawn
    minority row ``x_i``, one of its ``k`` nearest minority neighbours ``x_nn``
    (Euclidean, k capped at minority size - 1) and ``u ~ U[0, 1]``. Original
    rows come first, unchanged.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y).astype(np.int64)
    classes, counts = np.unique(y, return_counts=True)
    if len(classes) < 2:
        raise MinorityTooSmall("SMOTE needs two classes")
    if counts[0] == counts[1]:
        return X.copy(), y.copy()
    minority = classes[np.argmin(counts)]
    n_new = int(counts.max() - counts.min())
    pool = X[y == minority]
    m = len(pool)
    if m < 2:
        raise MinorityTooSmall(f"minority class has {m} sample(s); need 2")
    if not np.isfinite(X).all():
        raise ValueError("SMOTE needs finite features")
    k = min(k_neighbors, m - 1)

    diff = pool[:, None, :] - pool[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    np.fill_diagonal(d2, np.inf)
    neighbours = np.argsort(d2, axis=1, kind="stable")[:, :k]

    rng = np.random.default_rng(seed)
    base = rng.integers(0, m, size=n_new)
    pick = neighbours[base, rng.integers(0, k, size=n_new)]
    gap = rng.random(n_new)[:, None]
    synthetic = pool[base] + gap * (pool[pick] - pool[base])
    return (np.vstack([X, synthetic]),
            np.concatenate([y, np.full(n_new, minority, dtype=np.int64)]))
