"""Monte Carlo cross-validation over participant-level splits."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from ..corpus import DEFAULT_RATE_HZ, MotionRecording, load_corpus
from ..errors import AbortedRepetition, KinemarkError, RecordingTooShort
from ..features import FeatureMatrix, extract_matrix, windows_from_corpus
from ..models.base import ModelSpec, predict, train
from ..models.metrics import METRIC_NAMES, Metrics, compute_metrics
from ..prep import (
    FeatureMask,
    SplitPlan,
    apply_standardizer,
    check_disjoint,
    fit_standardizer,
    rfe_select,
    smote,
    split_participants,
)
from .config import ExperimentConfig

log = logging.getLogger(__name__)


@dataclass
class PreparedData:
    """Feature matrix covering the widest requested setting, plus outcomes."""

    matrix: FeatureMatrix
    outcomes: dict[str, str]
    skipped: list[str] = field(default_factory=list)


def prepare(config: ExperimentConfig, recordings: list[MotionRecording] | None = None
            ) -> PreparedData:
    """Load the corpus (unless given) and extract every feature the settings need."""
    if recordings is None:
        recordings = load_corpus(config.corpus, config.sample_rate_hz)
    if not recordings:
        raise KinemarkError("the corpus is empty")
    widest = max(config.settings)
    windows, meta, skipped = windows_from_corpus(recordings, config.window_len_s,
                                                 config.stride_s, config.segment_len_s)
    rate = recordings[0].sample_rate_hz if recordings else DEFAULT_RATE_HZ
    matrix = extract_matrix(windows, meta, rate, config.orders(widest))
    dropped = {s.participant_id for s in skipped if isinstance(s, RecordingTooShort)}
    outcomes = {r.participant_id: r.outcome.value for r in recordings
                if r.participant_id not in dropped}
    return PreparedData(matrix, outcomes, sorted(dropped))


@dataclass
class SettingResult:
    """One setting within one repetition."""

    setting: str
    mask: FeatureMask
    metrics: dict[str, Metrics]
    importances: dict[str, dict[str, float] | None]


@dataclass
class RepetitionResult:
    rep_index: int
    seed: int
    split: SplitPlan
    settings: dict[str, SettingResult]


def _evaluate_setting(config: ExperimentConfig, setting: str, matrix: FeatureMatrix,
                      train_rows: np.ndarray, test_rows: np.ndarray, seed: int) -> SettingResult:
    sub = matrix.select_orders(config.orders(setting))
    X_tr, X_te = sub.values[train_rows], sub.values[test_rows]
    y_tr, y_te = sub.labels[train_rows], sub.labels[test_rows]

    scaler = fit_standardizer(X_tr)
    X_tr, X_te = apply_standardizer(X_tr, scaler), apply_standardizer(X_te, scaler)
    mask = rfe_select(X_tr, y_tr, sub.names, k=config.k_features, seed=seed)
    cols = mask.indices(sub.names)
    X_tr, X_te = X_tr[:, cols], X_te[:, cols]
    X_bal, y_bal = smote(X_tr, y_tr, seed=seed)

    metrics, importances = {}, {}
    for kind in config.models:
        spec = ModelSpec(kind, dict(config.model_params.get(kind, {})), seed)
        model = train(spec, X_bal, y_bal, mask.names)
        metrics[kind] = compute_metrics(y_te, predict(model, X_te))
        imp = model.feature_importances
        importances[kind] = (None if imp is None
                             else {n: float(v) for n, v in zip(mask.names, imp)})
    return SettingResult(setting, mask, metrics, importances)


def route_rows(config: ExperimentConfig, rep_index: int, data: PreparedData
               ) -> tuple[SplitPlan, np.ndarray, np.ndarray]:
    """Split participants for ``rep_index`` and route every window row by participant.

    The participant-disjointness check runs here, on every call.
    """
    plan = split_participants(data.outcomes, config.test_fraction, config.seed_for(rep_index))
    pids = data.matrix.participant_ids
    train_set, test_set = set(plan.train_participants), set(plan.test_participants)
    train_rows = np.flatnonzero([p in train_set for p in pids])
    test_rows = np.flatnonzero([p in test_set for p in pids])
    check_disjoint(pids[train_rows], pids[test_rows])
    return plan, train_rows, test_rows


def run_repetition(config: ExperimentConfig, rep_index: int,
                   data: PreparedData | None = None) -> RepetitionResult:
    """One repetition: a single split shared by every setting and model.

    Failures are re-raised as :class:`AbortedRepetition` carrying ``rep_index``.
    """
    if data is None:
        data = prepare(config)
    seed = config.seed_for(rep_index)
    try:
        plan, train_rows, test_rows = route_rows(config, rep_index, data)
        results = {s: _evaluate_setting(config, s, data.matrix, train_rows, test_rows, seed)
                   for s in config.settings}
    except AbortedRepetition:
        raise
    except Exception as exc:
        raise AbortedRepetition(rep_index, exc) from exc
    return RepetitionResult(rep_index, seed, plan, results)


def _worker(args):
    config, rep_index, data = args
    return run_repetition(config, rep_index, data)


def run_repetitions(config: ExperimentConfig, data: PreparedData, n_jobs: int = 1,
                    progress: Callable[[RepetitionResult], None] | None = None
                    ) -> list[RepetitionResult]:
    reps = range(config.repetitions)
    results = []
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            for res in pool.map(_worker, [(config, r, data) for r in reps]):
                results.append(res)
                if progress:
                    progress(res)
    else:
        for r in reps:
            res = run_repetition(config, r, data)
            results.append(res)
            if progress:
                progress(res)
    return sorted(results, key=lambda r: r.rep_index)


def mean_importances(per_rep: list[Mapping[str, float] | None]) -> list[tuple[str, float]]:
    """Average per-repetition importance maps; a name absent from a repetition counts 0.

    Sorted by decreasing mean, then by name.
    """
    maps = [m for m in per_rep if m is not None]
    if not maps:
        return []
    totals: dict[str, float] = {}
    for m in maps:
        for name, v in m.items():
            totals[name] = totals.get(name, 0.0) + v
    ranked = [(name, total / len(maps)) for name, total in totals.items()]
    return sorted(ranked, key=lambda kv: (-kv[1], kv[0]))


def summarize(values) -> tuple[float, float]:
    """Arithmetic mean and population SD."""
    a = np.asarray(values, dtype=np.float64)
    return float(np.mean(a)), float(np.std(a))


def run_experiment(config: ExperimentConfig, data: PreparedData | None = None, n_jobs: int = 1,
                   progress: Callable[[RepetitionResult], None] | None = None):
    """Run every repetition and aggregate into an :class:`EvaluationReport`."""
    from .report import build_report

    if data is None:
        data = prepare(config)
    results = run_repetitions(config, data, n_jobs, progress)
    return build_report(config, results, data)


__all__ = [
    "METRIC_NAMES",
    "PreparedData",
    "RepetitionResult",
    "SettingResult",
    "mean_importances",
    "prepare",
    "route_rows",
    "run_experiment",
    "run_repetition",
    "run_repetitions",
    "summarize",
]
