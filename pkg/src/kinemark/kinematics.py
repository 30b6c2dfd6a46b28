"""Derivative stacks (velocity, acceleration, jerk) and fixed-length windowing."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .corpus import CHANNELS
from .errors import NonIntegralWindow, SeriesTooShort

ORDERS = ("movement", "velocity", "acceleration", "jerk")


def differentiate(x, dt_s: float) -> np.ndarray:
    """First derivative along the last axis, same length as ``x``.

    Interior samples use central differences, the two endpoints use one-sided
    first differences.
    """
    x = np.asarray(x, dtype=np.float64)
    if not dt_s > 0:
        raise ValueError("dt_s must be positive")
    if x.shape[-1] < 3:
        raise SeriesTooShort(x.shape[-1], 3)
    return np.gradient(x, dt_s, axis=-1, edge_order=1)


@dataclass(frozen=True)
class KinematicStack:
    """Movement plus its first three derivatives, all of shape (6, n)."""

    orders: Mapping[str, np.ndarray]
    sample_rate_hz: float
    participant_id: str | None = None
    label: int | None = None

    @property
    def n_samples(self) -> int:
        return self.orders["movement"].shape[-1]

    @property
    def dt_s(self) -> float:
        return 1.0 / self.sample_rate_hz

    def as_array(self) -> np.ndarray:
        """(4, 6, n) array in :data:`ORDERS` order."""
        return np.stack([self.orders[o] for o in ORDERS])


def build_stack(channels, sample_rate_hz: float, participant_id: str | None = None,
                label: int | None = None) -> KinematicStack:
    movement = np.array(channels, dtype=np.float64)
    if movement.ndim != 2 or movement.shape[0] != len(CHANNELS):
        raise ValueError(f"expected 6 channels, got shape {movement.shape}")
    if movement.shape[1] < 4:
        raise SeriesTooShort(movement.shape[1], 4)
    dt = 1.0 / sample_rate_hz
    velocity = differentiate(movement, dt)
    acceleration = differentiate(velocity, dt)
    jerk = differentiate(acceleration, dt)
    orders = {}
    for name, arr in zip(ORDERS, (movement, velocity, acceleration, jerk)):
        arr.setflags(write=False)
        orders[name] = arr
    return KinematicStack(orders, sample_rate_hz, participant_id, label)


@dataclass(frozen=True)
class WindowInstance:
    participant_id: str | None
    label: int | None
    window_index: int
    start: int
    samples: Mapping[str, np.ndarray] = field(repr=False)
    sample_rate_hz: float = 60.0

    @property
    def length(self) -> int:
        return self.samples["movement"].shape[-1]


def _to_samples(seconds: float, rate: float, what: str) -> int:
    exact = seconds * rate
    n = int(round(exact))
    if n <= 0 or not math.isclose(exact, n, rel_tol=0, abs_tol=1e-9):
        raise NonIntegralWindow(f"{what} of {seconds} s is {exact} samples at {rate} Hz")
    return n


def window_bounds(n_samples: int, window: int, stride: int) -> np.ndarray:
    """Start indices of every full window; trailing partial windows are dropped."""
    if n_samples < window:
        return np.empty(0, dtype=np.int64)
    return np.arange(0, n_samples - window + 1, stride, dtype=np.int64)


def window_stack(stack: KinematicStack, window_len_s: float = 1.0,
                 stride_s: float | None = None) -> list[WindowInstance]:
    rate = stack.sample_rate_hz
    W = _to_samples(window_len_s, rate, "window")
    S = _to_samples(window_len_s if stride_s is None else stride_s, rate, "stride")
    if W < 4:
        raise NonIntegralWindow(f"window of {W} samples is below the 4-sample minimum")
    windows = []
    for i, start in enumerate(window_bounds(stack.n_samples, W, S)):
        sl = slice(int(start), int(start) + W)
        samples = {o: stack.orders[o][:, sl] for o in ORDERS}
        windows.append(WindowInstance(stack.participant_id, stack.label, i, int(start),
                                      samples, rate))
    return windows


def window_array(stack: KinematicStack, window_len_s: float = 1.0,
                 stride_s: float | None = None) -> np.ndarray:
    """Windows of ``stack`` as one (n_windows, 4, 6, W) array."""
    rate = stack.sample_rate_hz
    W = _to_samples(window_len_s, rate, "window")
    S = _to_samples(window_len_s if stride_s is None else stride_s, rate, "stride")
    starts = window_bounds(stack.n_samples, W, S)
    full = stack.as_array()
    if not len(starts):
        return np.empty((0, len(ORDERS), len(CHANNELS), W))
    idx = starts[:, None] + np.arange(W)[None, :]
    return np.moveaxis(full[:, :, idx], 2, 0)


def orders_for(setting: Sequence[str]) -> tuple[str, ...]:
    """Validate an order set and return it in canonical order."""
    chosen = set(setting)
    unknown = chosen - set(ORDERS)
    if unknown:
        raise ValueError(f"unknown kinematic orders: {sorted(unknown)}")
    if "movement" not in chosen:
        raise ValueError("an order set must include movement")
    return tuple(o for o in ORDERS if o in chosen)
