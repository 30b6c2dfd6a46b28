"""Statistical descriptors. Every function maps an (m, n) batch to (m,) or (m, k)."""
from __future__ import annotations

import numpy as np

N_ECDF = 10
N_HIST = 10
PERCENTILES = (20, 80)


def _constant(x):
    return np.ptp(x, axis=-1) == 0


def absolute_energy(x):
    return np.sum(x * x, axis=-1)


def average_power(x, fs):
    n = x.shape[-1]
    return np.sum(x * x, axis=-1) / ((n - 1) / fs)


def ecdf(x):
    # sorted sample at evenly spaced ranks floor(j*(n-1)/9)
    n = x.shape[-1]
    idx = (np.arange(N_ECDF) * (n - 1)) // (N_ECDF - 1)
    return np.sort(x, axis=-1)[:, idx]


def _percentile_ranks(n):
    # smallest sorted position whose ECDF value k/n reaches p
    return np.array([max(-(-n * p // 100) - 1, 0) for p in PERCENTILES])


def ecdf_percentile(x):
    return np.sort(x, axis=-1)[:, _percentile_ranks(x.shape[-1])]


def ecdf_percentile_count(x):
    values = ecdf_percentile(x)
    return np.sum(x[:, None, :] <= values[:, :, None], axis=-1).astype(np.float64)


def histogram(x):
    """Counts in 10 equal-width bins over [min, max]; last bin is closed.

    A constant series puts every sample in bin 0.
    """
    m, n = x.shape
    lo = x.min(axis=-1, keepdims=True)
    hi = x.max(axis=-1, keepdims=True)
    span = hi - lo
    flat = span == 0
    safe = np.where(flat, 1.0, span)
    idx = np.floor((x - lo) / safe * N_HIST).astype(np.int64)
    idx = np.clip(idx, 0, N_HIST - 1)
    # settle rounding at the edges against the explicit edge values
    edges = lo + safe * (np.arange(N_HIST + 1) / N_HIST)
    left = np.take_along_axis(edges, idx, axis=-1)
    right = np.take_along_axis(edges, idx + 1, axis=-1)
    idx = np.where((x < left) & (idx > 0), idx - 1, idx)
    idx = np.where((x >= right) & (idx < N_HIST - 1), idx + 1, idx)
    idx = np.where(flat, 0, idx)
    counts = np.zeros((m, N_HIST))
    np.add.at(counts, (np.repeat(np.arange(m), n), idx.ravel()), 1.0)
    return counts


def entropy(x):
    p = histogram(x) / x.shape[-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return -np.sum(terms, axis=-1) + 0.0


def interquartile_range(x):
    q75, q25 = np.percentile(x, [75, 25], axis=-1)
    return q75 - q25


def _central_moments(x):
    # moments of the deviations rescaled to unit max, so ratios survive extreme scales
    d = x - x.mean(axis=-1, keepdims=True)
    peak = np.max(np.abs(d), axis=-1, keepdims=True)
    d = d / np.where(peak == 0, 1.0, peak)
    d2 = d * d
    return np.mean(d2, axis=-1), np.mean(d2 * d, axis=-1), np.mean(d2 * d2, axis=-1)


def kurtosis(x):
    m2, _, m4 = _central_moments(x)
    flat = _constant(x)
    return np.where(flat, 0.0, m4 / np.where(flat, 1.0, m2 * m2) - 3.0)


def skewness(x):
    m2, m3, _ = _central_moments(x)
    flat = _constant(x)
    return np.where(flat, 0.0, m3 / np.where(flat, 1.0, m2 ** 1.5))


def maximum(x):
    return x.max(axis=-1)


def minimum(x):
    return x.min(axis=-1)


def mean(x):
    return x.mean(axis=-1)


def median(x):
    return np.median(x, axis=-1)


def mean_absolute_deviation(x):
    return np.mean(np.abs(x - x.mean(axis=-1, keepdims=True)), axis=-1)


def median_absolute_deviation(x):
    return np.median(np.abs(x - np.median(x, axis=-1, keepdims=True)), axis=-1)


def peak_to_peak(x):
    return np.ptp(x, axis=-1)


def root_mean_square(x):
    return np.sqrt(np.mean(x * x, axis=-1))


def standard_deviation(x):
    return np.where(_constant(x), 0.0, np.std(x, axis=-1))


def variance(x):
    return np.where(_constant(x), 0.0, np.var(x, axis=-1))
