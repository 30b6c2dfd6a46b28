"""Synthetic head-motion corpus with a planted, imperfect sickness effect.

Every channel is a sum of slow sinusoids (postural sway) plus smoothed noise.
Sick participants get, in their final segment only, a shifted dominant
frequency and short high-jerk bursts, both scaled by a per-participant
severity drawn from a wide range so that some Sick tails look nearly Well.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from ..corpus import (
    CHANNELS,
    DEFAULT_RATE_HZ,
    DEFAULT_SEGMENT_S,
    ManifestEntry,
    MotionRecording,
    Outcome,
    write_manifest,
    write_recording,
)

MANIFEST_NAME = "manifest.csv"

# positional channels in cm, rotational in degrees
_OFFSET_SCALE = np.array([5.0, 5.0, 5.0, 3.0, 3.0, 10.0])
_OFFSET_BASE = np.array([0.0, 165.0, 0.0, 0.0, 0.0, 0.0])
_SWAY_AMPLITUDE = np.array([1.0, 0.4, 1.0, 1.5, 1.0, 3.0])


@dataclass(frozen=True)
class SynthParams:
    duration_s: float = 60.0
    sample_rate_hz: float = DEFAULT_RATE_HZ
    effect_s: float = DEFAULT_SEGMENT_S
    noise: float = 0.02
    # effect sizes were tuned so the default 20-participant corpus is learnable
    # but not separable (boosted-tree accuracy roughly 0.7-0.9 across seeds)
    severity_range: tuple[float, float] = (0.0, 1.0)
    shift_hz: tuple[float, float] = (1.0, 2.0)
    shift_amplitude: float = 0.2
    burst_rate_hz: float = 0.6
    burst_amplitude: float = 0.08


def _smoothed_noise(rng, shape, scale):
    raw = rng.normal(0.0, scale, size=shape)
    kernel = np.ones(6) / 6.0
    return np.apply_along_axis(np.convolve, -1, raw, kernel, mode="same")


def synth_recording(participant_id: str, outcome: Outcome, rng: np.random.Generator,
                    params: SynthParams = SynthParams()) -> MotionRecording:
    fs = params.sample_rate_hz
    n = int(round(params.duration_s * fs))
    t = np.arange(n) / fs
    ch = len(CHANNELS)

    freqs = rng.uniform(0.1, 0.6, size=(ch, 3))
    amps = rng.uniform(0.3, 1.0, size=(ch, 3)) * _SWAY_AMPLITUDE[:, None]
    phases = rng.uniform(0, 2 * np.pi, size=(ch, 3))
    sway = (amps[..., None] * np.sin(2 * np.pi * freqs[..., None] * t + phases[..., None])).sum(1)
    offset = _OFFSET_BASE + rng.normal(0.0, 1.0, size=ch) * _OFFSET_SCALE
    signal = offset[:, None] + sway + _smoothed_noise(rng, (ch, n), params.noise * _SWAY_AMPLITUDE[:, None])

    # the effect draws always happen so Well and Sick consume the rng alike
    severity = rng.uniform(*params.severity_range)
    shift_f = rng.uniform(*params.shift_hz, size=ch)
    shift_phase = rng.uniform(0, 2 * np.pi, size=ch)
    affected = rng.random(ch) < 0.7
    n_bursts = rng.poisson(params.burst_rate_hz * params.effect_s)
    burst_at = rng.uniform(0, params.effect_s, size=n_bursts)
    burst_f = rng.uniform(3.0, 6.0, size=n_bursts)
    burst_ch = rng.random((n_bursts, ch)) < 0.5

    if outcome is Outcome.SICK:
        start = n - int(round(params.effect_s * fs))
        tail = t[start:] - t[start]
        ramp = np.minimum(1.0, tail / 1.0)
        shifted = np.sin(2 * np.pi * shift_f[:, None] * tail + shift_phase[:, None])
        extra = (severity * params.shift_amplitude * affected[:, None]
                 * _SWAY_AMPLITUDE[:, None] * ramp * shifted)
        for at, f, mask in zip(burst_at, burst_f, burst_ch):
            env = np.exp(-0.5 * ((tail - at) / 0.08) ** 2)
            extra += (severity * params.burst_amplitude * mask[:, None] * _SWAY_AMPLITUDE[:, None]
                      * env * np.sin(2 * np.pi * f * (tail - at)))
        signal[:, start:] += extra
    return MotionRecording(participant_id, signal, outcome, fs)


def synth_corpus(out_dir: Union[str, os.PathLike], n_participants: int = 20,
                 sick_fraction: float = 0.5, seed: int = 0,
                 params: SynthParams = SynthParams()) -> Path:
    """Write ``n_participants`` recordings plus a manifest; returns the manifest path.

    round(n * sick_fraction) participants are Sick. Output is byte-identical
    for a fixed seed.
    """
    if n_participants < 4:
        raise ValueError("n_participants must be at least 4")
    if not 0 <= sick_fraction <= 1:
        raise ValueError("sick_fraction must lie in [0, 1]")
    if params.duration_s < 2 * params.effect_s:
        raise ValueError("duration_s must cover the lead-in and the sick tail")
    out = Path(out_dir)
    (out / "recordings").mkdir(parents=True, exist_ok=True)
    n_sick = int(np.floor(n_participants * sick_fraction + 0.5))
    rng = np.random.default_rng(seed)
    sick = set(rng.permutation(n_participants)[:n_sick].tolist())
    width = max(3, len(str(n_participants - 1)))
    entries = []
    for i in range(n_participants):
        pid = f"P{i:0{width}d}"
        outcome = Outcome.SICK if i in sick else Outcome.WELL
        rec = synth_recording(pid, outcome, np.random.default_rng([seed, i]), params)
        path = out / "recordings" / f"{pid}.csv"
        write_recording(rec, path, include_time=True)
        entries.append(ManifestEntry(pid, outcome, path))
    manifest = out / MANIFEST_NAME
    write_manifest(entries, manifest)
    return manifest
