"""Per-window feature vectors and corpus-level feature matrices."""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from typing import IO, Sequence, Union

import numpy as np

from ..corpus import CHANNELS, MotionRecording, segment_corpus
from ..errors import SeriesTooShort
from ..kinematics import ORDERS, WindowInstance, build_stack, orders_for, window_array
from .registry import arity, column_names, compute_batch

META_COLUMNS = ("participant_id", "label", "window_index")


def _named(x, fs, category):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("expected a single 1-D series")
    values = compute_batch(x[None, :], fs, category)[0]
    return dict(zip(column_names(category), values.tolist()))


def compute_statistical(x, sample_rate_hz: float = 60.0) -> dict[str, float]:
    return _named(x, sample_rate_hz, "statistical")


def compute_temporal(x, sample_rate_hz: float = 60.0) -> dict[str, float]:
    return _named(x, sample_rate_hz, "temporal")


def compute_spectral(x, sample_rate_hz: float = 60.0) -> dict[str, float]:
    return _named(x, sample_rate_hz, "spectral")


def feature_names(setting: Sequence[str] = ORDERS) -> list[str]:
    per_series = column_names()
    return [f"{o}_{ch}_{f}" for o in orders_for(setting) for ch in CHANNELS for f in per_series]


def parse_feature_name(name: str) -> tuple[str, str, str]:
    """Split ``order_Channel_Feature[_k]`` into (order, channel, feature)."""
    order, channel, feature = name.split("_", 2)
    return order, channel, feature


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    names: list[str]
    participant_id: str | None
    label: int | None
    window_index: int


def extract_window(w: WindowInstance, setting: Sequence[str] = ("movement",)) -> FeatureVector:
    orders = orders_for(setting)
    series = np.concatenate([np.asarray(w.samples[o], dtype=np.float64) for o in orders])
    try:
        values = compute_batch(series, w.sample_rate_hz).ravel()
    except SeriesTooShort as exc:
        raise SeriesTooShort(exc.length, exc.minimum, f"window {w.window_index}") from None
    return FeatureVector(values, feature_names(orders), w.participant_id, w.label, w.window_index)


@dataclass
class FeatureMatrix:
    """Window rows x named feature columns, with per-row provenance."""

    values: np.ndarray
    names: list[str]
    participant_ids: np.ndarray
    labels: np.ndarray
    window_indices: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        self.participant_ids = np.asarray(self.participant_ids, dtype=object)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.window_indices = np.asarray(self.window_indices, dtype=np.int64)
        n = len(self.labels)
        if self.values.shape != (n, len(self.names)):
            raise ValueError(f"values shape {self.values.shape} does not match "
                             f"{n} rows x {len(self.names)} names")

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def provenance(self) -> list[tuple[str, str, str]]:
        return [parse_feature_name(n) for n in self.names]

    def select_columns(self, names: Sequence[str]) -> "FeatureMatrix":
        index = {n: i for i, n in enumerate(self.names)}
        cols = [index[n] for n in names]
        return FeatureMatrix(self.values[:, cols], list(names), self.participant_ids,
                             self.labels, self.window_indices)

    def select_orders(self, setting: Sequence[str]) -> "FeatureMatrix":
        keep = set(orders_for(setting))
        return self.select_columns([n for n in self.names if n.split("_", 1)[0] in keep])

    def select_rows(self, mask) -> "FeatureMatrix":
        mask = np.asarray(mask)
        return FeatureMatrix(self.values[mask], self.names, self.participant_ids[mask],
                             self.labels[mask], self.window_indices[mask])

    def rows_for(self, participants) -> "FeatureMatrix":
        wanted = set(participants)
        return self.select_rows(np.array([p in wanted for p in self.participant_ids], dtype=bool))

    def to_csv(self, dest: Union[str, os.PathLike, IO[str]]) -> None:
        owned = isinstance(dest, (str, os.PathLike))
        fh = open(dest, "w", newline="", encoding="utf-8") if owned else dest
        try:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(list(META_COLUMNS) + self.names)
            for i in range(self.n_rows):
                writer.writerow([self.participant_ids[i], int(self.labels[i]),
                                 int(self.window_indices[i])]
                                + [format(v, ".17g") for v in self.values[i]])
        finally:
            if owned:
                fh.close()

    @classmethod
    def from_csv(cls, src: Union[str, os.PathLike, IO[str]]) -> "FeatureMatrix":
        owned = isinstance(src, (str, os.PathLike))
        fh = open(src, newline="", encoding="utf-8") if owned else src
        try:
            reader = csv.reader(fh)
            header = next(reader)
            rows = [r for r in reader if r]
        finally:
            if owned:
                fh.close()
        if tuple(header[:3]) != META_COLUMNS:
            raise ValueError(f"feature CSV must start with {META_COLUMNS}")
        names = header[3:]
        values = np.array([[float(v) for v in r[3:]] for r in rows]).reshape(len(rows), len(names))
        return cls(values, names, [r[0] for r in rows], [int(r[1]) for r in rows],
                   [int(r[2]) for r in rows])


def windows_from_corpus(recordings: Sequence[MotionRecording], window_len_s: float = 1.0,
                        stride_s: float | None = None, segment_len_s: float = 10.0):
    """Segment, differentiate and window a corpus.

    Returns the (n_windows, 4, 6, W) window array, the per-window metadata and
    the list of skipped (too short) recordings.
    """
    pairs, skipped = segment_corpus(recordings, segment_len_s)
    blocks, pids, labels, widx = [], [], [], []
    for rec, seg in pairs:
        stack = build_stack(seg.slice(rec), rec.sample_rate_hz, rec.participant_id, int(seg.label))
        w = window_array(stack, window_len_s, stride_s)
        blocks.append(w)
        pids.extend([rec.participant_id] * len(w))
        labels.extend([int(seg.label)] * len(w))
        widx.extend(range(len(w)))
    if blocks:
        windows = np.concatenate(blocks)
    else:
        windows = np.empty((0, len(ORDERS), len(CHANNELS), 0))
    meta = (np.array(pids, dtype=object), np.array(labels, dtype=np.int64),
            np.array(widx, dtype=np.int64))
    return windows, meta, skipped


def extract_matrix(windows: np.ndarray, meta, sample_rate_hz: float,
                   setting: Sequence[str] = ORDERS, chunk: int = 4096) -> FeatureMatrix:
    """Feature matrix for a (n_windows, 4, 6, W) window array."""
    orders = orders_for(setting)
    sel = [ORDERS.index(o) for o in orders]
    n_win = windows.shape[0]
    per = arity()
    series = windows[:, sel].reshape(-1, windows.shape[-1]) if n_win else np.empty((0, 0))
    out = np.empty((series.shape[0], per))
    for start in range(0, series.shape[0], chunk):
        out[start:start + chunk] = compute_batch(series[start:start + chunk], sample_rate_hz)
    values = out.reshape(n_win, len(orders) * len(CHANNELS) * per)
    pids, labels, widx = meta
    return FeatureMatrix(values, feature_names(orders), pids, labels, widx)


def extract_corpus(recordings: Sequence[MotionRecording], setting: Sequence[str] = ORDERS,
                   window_len_s: float = 1.0, stride_s: float | None = None,
                   segment_len_s: float = 10.0) -> FeatureMatrix:
    if not recordings:
        raise ValueError("empty corpus")
    rate = recordings[0].sample_rate_hz
    if any(r.sample_rate_hz != rate for r in recordings):
        raise ValueError("all recordings must share one sample rate")
    windows, meta, _ = windows_from_corpus(recordings, window_len_s, stride_s, segment_len_s)
    return extract_matrix(windows, meta, rate, setting)
