"""Experiment orchestration: configs, synthetic corpora, Monte Carlo runs, reports."""
from .config import SETTINGS, ExperimentConfig, config_from_options, parse_settings, read_config_file
from .experiment import (
    PreparedData,
    RepetitionResult,
    SettingResult,
    mean_importances,
    prepare,
    route_rows,
    run_experiment,
    run_repetition,
    run_repetitions,
)
from .reference import REFERENCE_RESULTS
from .report import (
    EvaluationReport,
    ModelSummary,
    SettingSummary,
    build_report,
    load_report,
    parse_text,
    report_render,
)
from .synth import MANIFEST_NAME, SynthParams, synth_corpus, synth_recording

__all__ = [
    "EvaluationReport", "ExperimentConfig", "MANIFEST_NAME", "ModelSummary", "PreparedData",
    "REFERENCE_RESULTS", "RepetitionResult", "SETTINGS", "SettingResult", "SettingSummary",
    "SynthParams", "build_report", "config_from_options", "load_report", "mean_importances",
    "parse_settings", "parse_text", "prepare", "read_config_file", "report_render", "route_rows",
    "run_experiment", "run_repetition", "run_repetitions", "synth_corpus", "synth_recording",
]
