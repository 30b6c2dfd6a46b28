"""Aggregated evaluation report and its text / JSON renderings."""
from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field

from ..errors import UnsupportedFormat
from ..features import REGISTRY_VERSION, feature_names
from ..models.metrics import METRIC_NAMES
from .config import SETTING_LABELS, ExperimentConfig
from .reference import REFERENCE_REPETITIONS, REFERENCE_RESULTS

REPORT_FORMAT = "kinemark.report"
REPORT_VERSION = 1
FORMATS = ("text", "json")
TOP_FEATURES = 20
_COUNT_NAMES = ("tp", "fp", "fn", "tn")


@dataclass
class ModelSummary:
    per_rep: dict[str, list[float]]
    counts: dict[str, list[int]]
    mean: dict[str, float]
    sd: dict[str, float]
    importances: list[dict[str, float] | None]


@dataclass
class SettingSummary:
    setting: str
    n_features: int
    models: dict[str, ModelSummary]
    best_model: str
    importance_ranking: list[tuple[str, float]]
    masks: list[list[str]]


@dataclass
class EvaluationReport:
    config: dict
    config_hash: str
    seeds: list[int]
    registry_version: str
    settings: dict[str, SettingSummary]
    splits: list[dict]
    skipped_participants: list[str] = field(default_factory=list)

    @property
    def repetitions(self) -> int:
        return len(self.seeds)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["format"] = REPORT_FORMAT
        d["version"] = REPORT_VERSION
        d["reference"] = {"repetitions": REFERENCE_REPETITIONS,
                          "results": {s: REFERENCE_RESULTS[s] for s in self.settings}}
        for s in d["settings"].values():
            s["importance_ranking"] = [list(kv) for kv in s["importance_ranking"]]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EvaluationReport":
        if d.get("format") != REPORT_FORMAT:
            raise ValueError("not a serialized evaluation report")
        settings = {}
        for key, s in d["settings"].items():
            models = {k: ModelSummary(**m) for k, m in s["models"].items()}
            settings[key] = SettingSummary(
                s["setting"], s["n_features"], models, s["best_model"],
                [(n, v) for n, v in s["importance_ranking"]], s["masks"])
        return cls(d["config"], d["config_hash"], d["seeds"], d["registry_version"], settings,
                   d["splits"], d.get("skipped_participants", []))


def build_report(config: ExperimentConfig, results, data) -> EvaluationReport:
    from .experiment import mean_importances, summarize

    settings = {}
    for s in config.settings:
        models = {}
        for kind in config.models:
            per_rep = {m: [float(getattr(r.settings[s].metrics[kind], m)) for r in results]
                       for m in METRIC_NAMES}
            counts = {c: [int(getattr(r.settings[s].metrics[kind], c)) for r in results]
                      for c in _COUNT_NAMES}
            stats = {m: summarize(v) for m, v in per_rep.items()}
            models[kind] = ModelSummary(
                per_rep, counts,
                {m: stats[m][0] for m in METRIC_NAMES}, {m: stats[m][1] for m in METRIC_NAMES},
                [r.settings[s].importances[kind] for r in results])
        # roster order breaks ties
        best = max(config.models, key=lambda k: (models[k].mean["accuracy"],
                                                 -config.models.index(k)))
        settings[s] = SettingSummary(
            s, len(feature_names(config.orders(s))), models, best,
            mean_importances(models[best].importances),
            [list(r.settings[s].mask.names) for r in results])
    splits = [{"rep_index": r.rep_index, "seed": r.seed,
               "train": list(r.split.train_participants),
               "test": list(r.split.test_participants)} for r in results]
    return EvaluationReport(config.to_dict(), config.hash(), [r.seed for r in results],
                            REGISTRY_VERSION, settings, splits, list(data.skipped))


# --- text rendering -------------------------------------------------------------

_HEADERS = ("Model", "Accuracy", "Precision", "Recall", "F1")
_MODEL_W = 22
_CELL_W = 15


def _cell(mean: float, sd: float) -> str:
    return f"{mean:.1f}% ({sd:.1f})"


def _row(label: str, cells) -> str:
    return label.ljust(_MODEL_W) + "".join(c.ljust(_CELL_W) for c in cells).rstrip()


def render_text(report: EvaluationReport) -> str:
    cfg = report.config
    lines = [
        "kinemark evaluation report",
        f"config hash: {report.config_hash}",
        f"corpus: {cfg['corpus']}",
        f"repetitions: {report.repetitions}  seeds: {report.seeds[0]}..{report.seeds[-1]}"
        f"  k_features: {cfg['k_features']}  test_fraction: {cfg['test_fraction']}",
        f"window: {cfg['window_len_s']} s  stride: {cfg['stride_s'] or cfg['window_len_s']} s"
        f"  registry: {report.registry_version}",
    ]
    if report.skipped_participants:
        lines.append("skipped (recording too short): " + ", ".join(report.skipped_participants))
    lines.append("values are mean% (population SD) over repetitions; 'published' rows are "
                 f"reference values from a {REFERENCE_REPETITIONS}-repetition study "
                 "and are not measured here")
    for key, s in report.settings.items():
        lines += ["", f"Setting {key} ({SETTING_LABELS[key]}): {s.n_features} features before RFE",
                  _row(_HEADERS[0], _HEADERS[1:]),
                  _row("-" * (_MODEL_W - 1), ["-" * (_CELL_W - 1)] * 4)]
        for kind, m in s.models.items():
            flag = "*" if kind == s.best_model else ""
            lines.append(_row(kind + flag, [_cell(100 * m.mean[x], 100 * m.sd[x])
                                            for x in METRIC_NAMES]))
            ref = REFERENCE_RESULTS.get(key, {}).get(kind)
            if ref:
                lines.append(_row("  published", [_cell(*ref[x]) for x in METRIC_NAMES]))
        lines.append(f"* best model by mean accuracy: {s.best_model}")
        if s.importance_ranking:
            lines += ["", f"Top features of {s.best_model} (mean normalized importance)"]
            top = s.importance_ranking[:TOP_FEATURES]
            width = max(len(name) for name, _ in top)
            for i, (name, v) in enumerate(top, 1):
                lines.append(f"{i:>3}  {name:<{width}}  {v:.4f}")
    return "\n".join(lines) + "\n"


_ROW_RE = re.compile(r"^(\S+?)\*?\s+" + r"\s+".join([r"(-?[\d.]+)% \((-?[\d.]+)\)"] * 4) + r"\s*$")
_SETTING_RE = re.compile(r"^Setting (s\d) ")


def parse_text(text: str) -> dict[str, dict[str, dict[str, tuple[float, float]]]]:
    """Recover the measured (mean, sd) fractions from a text report."""
    out: dict = {}
    current = None
    for line in text.splitlines():
        m = _SETTING_RE.match(line)
        if m:
            current = out.setdefault(m.group(1), {})
            continue
        m = _ROW_RE.match(line)
        if m and current is not None:
            nums = [float(v) / 100 for v in m.groups()[1:]]
            current[m.group(1)] = {x: (nums[2 * i], nums[2 * i + 1])
                                   for i, x in enumerate(METRIC_NAMES)}
    return out


def render_json(report: EvaluationReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def report_render(report: EvaluationReport, fmt: str = "text") -> bytes:
    if fmt == "text":
        return render_text(report).encode("utf-8")
    if fmt == "json":
        return render_json(report).encode("utf-8")
    raise UnsupportedFormat(f"unsupported report format {fmt!r}; choose from {FORMATS}")


def load_report(blob) -> EvaluationReport:
    if isinstance(blob, bytes):
        blob = blob.decode("utf-8")
    return EvaluationReport.from_dict(json.loads(blob))
