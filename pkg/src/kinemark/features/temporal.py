"""Temporal descriptors over (m, n) batches sampled every ``dt`` seconds."""
from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

PEAK_RADIUS = 10


def _safe_div(num, den):
    zero = den == 0
    return np.where(zero, 0.0, num / np.where(zero, 1.0, den))


def area_under_curve(x, dt):
    return dt * np.sum((x[:, 1:] + x[:, :-1]) / 2.0, axis=-1)


def autocorrelation(x):
    return _safe_div(np.sum(x[:, :-1] * x[:, 1:], axis=-1), np.sum(x * x, axis=-1))


def centroid(x, dt):
    e = x * x
    t = np.arange(x.shape[-1]) * dt
    return _safe_div(np.sum(t * e, axis=-1), np.sum(e, axis=-1))


def mean_absolute_diff(x):
    return np.mean(np.abs(np.diff(x, axis=-1)), axis=-1)


def mean_diff(x):
    return np.mean(np.diff(x, axis=-1), axis=-1)


def median_absolute_diff(x):
    return np.median(np.abs(np.diff(x, axis=-1)), axis=-1)


def median_diff(x):
    return np.median(np.diff(x, axis=-1), axis=-1)


def negative_turning_points(x):
    mid = x[:, 1:-1]
    return np.sum((x[:, :-2] > mid) & (mid < x[:, 2:]), axis=-1).astype(np.float64)


def positive_turning_points(x):
    mid = x[:, 1:-1]
    return np.sum((x[:, :-2] < mid) & (mid > x[:, 2:]), axis=-1).astype(np.float64)


def neighbourhood_peaks(x, radius=PEAK_RADIUS):
    """Samples with a full +-radius neighbourhood that beat every neighbour and the mean."""
    m, n = x.shape
    if n < 2 * radius + 1:
        return np.zeros(m)
    side_max = sliding_window_view(x, radius, axis=-1).max(axis=-1)
    centre = x[:, radius:n - radius]
    left = side_max[:, :n - 2 * radius]
    right = side_max[:, radius + 1:]
    above_mean = centre > x.mean(axis=-1, keepdims=True)
    return np.sum((centre > left) & (centre > right) & above_mean, axis=-1).astype(np.float64)


def signal_distance(x):
    d = np.diff(x, axis=-1)
    return np.sum(np.sqrt(1.0 + d * d), axis=-1)


def slope(x, dt):
    t = np.arange(x.shape[-1]) * dt
    tc = t - t.mean()
    xc = x - x.mean(axis=-1, keepdims=True)
    return np.sum(tc * xc, axis=-1) / np.sum(tc * tc)


def sum_absolute_diff(x):
    return np.sum(np.abs(np.diff(x, axis=-1)), axis=-1)


def zero_crossing_rate(x):
    """Strict sign changes between consecutive samples; zeros carry the previous sign."""
    s = np.sign(x)
    n = x.shape[-1]
    last = np.where(s != 0, np.arange(n), 0)
    np.maximum.accumulate(last, axis=-1, out=last)
    filled = np.take_along_axis(s, last, axis=-1)
    return np.sum(filled[:, :-1] * filled[:, 1:] < 0, axis=-1).astype(np.float64)
