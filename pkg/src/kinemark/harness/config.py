"""Experiment configuration, validation and hashing."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping

from ..errors import ConfigError
from ..kinematics import ORDERS
from ..models.base import MODEL_KINDS, ModelSpec

SETTINGS = {f"s{i}": ORDERS[:i] for i in range(1, len(ORDERS) + 1)}
SETTING_LABELS = {
    "s1": "movement",
    "s2": "movement + velocity",
    "s3": "movement + velocity + acceleration",
    "s4": "movement + velocity + acceleration + jerk",
}


def parse_settings(value) -> tuple[str, ...]:
    """Accept "s4", "all", "s1,s3" or a sequence of those."""
    if isinstance(value, str):
        value = [v.strip() for v in value.split(",") if v.strip()]
    out: list[str] = []
    for v in value:
        v = str(v).lower()
        names = list(SETTINGS) if v == "all" else [v]
        for n in names:
            if n not in SETTINGS:
                raise ConfigError(f"unknown setting {n!r}; choose from {list(SETTINGS)} or 'all'")
            if n not in out:
                out.append(n)
    if not out:
        raise ConfigError("at least one setting is required")
    return tuple(sorted(out))


@dataclass(frozen=True)
class ExperimentConfig:
    corpus: str = ""
    settings: tuple[str, ...] = ("s4",)
    window_len_s: float = 1.0
    stride_s: float | None = None
    segment_len_s: float = 10.0
    k_features: int = 50
    repetitions: int = 50
    test_fraction: float = 0.2
    base_seed: int = 0
    models: tuple[str, ...] = MODEL_KINDS
    model_params: Mapping[str, Mapping[str, Any]] = field(default_factory=dict)
    sample_rate_hz: float = 60.0

    def __post_init__(self):
        object.__setattr__(self, "settings", parse_settings(self.settings))
        models = tuple(self.models)
        if not models:
            raise ConfigError("the model roster is empty")
        for m in models:
            if m not in MODEL_KINDS:
                raise ConfigError(f"unknown model {m!r}; choose from {MODEL_KINDS}")
        if len(set(models)) != len(models):
            raise ConfigError("the model roster lists a model twice")
        object.__setattr__(self, "models", models)
        params = {str(k): dict(v) for k, v in dict(self.model_params).items()}
        for kind, hp in params.items():
            if kind not in models:
                raise ConfigError(f"hyperparameters given for {kind!r}, which is not in the roster")
            ModelSpec(kind, hp)
        object.__setattr__(self, "model_params", params)
        if not (isinstance(self.repetitions, int) and self.repetitions >= 1):
            raise ConfigError(f"repetitions must be an integer >= 1, got {self.repetitions!r}")
        if not (isinstance(self.k_features, int) and self.k_features >= 1):
            raise ConfigError(f"k_features must be an integer >= 1, got {self.k_features!r}")
        if not 0 < self.test_fraction < 1:
            raise ConfigError(f"test_fraction must lie in (0, 1), got {self.test_fraction!r}")
        for name in ("window_len_s", "segment_len_s", "sample_rate_hz"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ConfigError(f"{name} must be a positive number, got {v!r}")
        if self.stride_s is not None and not self.stride_s > 0:
            raise ConfigError(f"stride_s must be positive, got {self.stride_s!r}")
        if self.window_len_s > self.segment_len_s:
            raise ConfigError("window_len_s exceeds segment_len_s")
        if not isinstance(self.base_seed, int) or self.base_seed < 0:
            raise ConfigError(f"base_seed must be a non-negative integer, got {self.base_seed!r}")

    def orders(self, setting: str) -> tuple[str, ...]:
        return SETTINGS[setting]

    def seed_for(self, rep_index: int) -> int:
        return self.base_seed + rep_index

    def to_dict(self) -> dict:
        d = asdict(self)
        d["settings"] = list(self.settings)
        d["models"] = list(self.models)
        return d

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        d = dict(d)
        for key in ("settings", "models"):
            if key in d and isinstance(d[key], list):
                d[key] = tuple(d[key])
        return cls(**d)

    def hash(self) -> str:
        """SHA-256 of the canonical JSON form; the corpus is identified by its path."""
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


# config-file keys mirror the CLI flags
_FILE_KEYS = {
    "corpus": ("corpus", str),
    "setting": ("settings", parse_settings),
    "reps": ("repetitions", int),
    "window_s": ("window_len_s", float),
    "stride_s": ("stride_s", float),
    "segment_s": ("segment_len_s", float),
    "k_features": ("k_features", int),
    "test_fraction": ("test_fraction", float),
    "seed": ("base_seed", int),
    "models": ("models", lambda v: tuple(m.strip() for m in v.split(",") if m.strip())
               if isinstance(v, str) else tuple(v)),
    "model_params": ("model_params", dict),
    "rate_hz": ("sample_rate_hz", float),
}
RUNTIME_KEYS = {"out", "jobs"}


def read_config_file(path) -> dict:
    """Read a JSON object or ``key=value`` lines; returns CLI-flag-named keys.

    Lines starting with ``#`` and blank lines are ignored in the key=value form.
    """
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            raw[key] = val
    out = {}
    for key, val in raw.items():
        key = key.replace("-", "_")
        if key not in _FILE_KEYS and key not in RUNTIME_KEYS:
            raise ConfigError(f"{path}: unknown key {key!r}")
        out[key] = val
    return out


def config_from_options(options: Mapping[str, Any]) -> ExperimentConfig:
    """Build a config from CLI-named options (None values are ignored)."""
    kwargs = {}
    for key, val in options.items():
        if val is None or key in RUNTIME_KEYS:
            continue
        if key not in _FILE_KEYS:
            raise ConfigError(f"unknown option {key!r}")
        target, conv = _FILE_KEYS[key]
        if key == "model_params" and isinstance(val, str):
            val = json.loads(val)
        try:
            kwargs[target] = conv(val)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key}: {val!r} ({exc})") from None
    return ExperimentConfig(**kwargs)
