"""The feature registry: every per-series descriptor, its arity and its formula.

Descriptor order here is the column order of every feature vector. Formula
text is the contract the tests check against; change both together and bump
``REGISTRY_VERSION``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from ..errors import SeriesTooShort
from . import spectral as sp
from . import statistical as st
from . import temporal as tm

REGISTRY_VERSION = "1.0"
CATEGORIES = ("statistical", "temporal", "spectral")
MIN_LENGTH = {"statistical": 4, "temporal": 4, "spectral": 8}


@dataclass(frozen=True)
class FeatureDescriptor:
    name: str
    category: str
    arity: int
    formula: str
    func: Callable[["SeriesBatch"], np.ndarray]

    def column_names(self) -> list[str]:
        if self.arity == 1:
            return [self.name]
        return [f"{self.name}_{k}" for k in range(self.arity)]


class SeriesBatch:
    """An (m, n) batch of equal-length series plus lazily shared transforms."""

    def __init__(self, x, fs: float):
        self.x = np.ascontiguousarray(np.atleast_2d(np.asarray(x, dtype=np.float64)))
        self.fs = float(fs)
        self.dt = 1.0 / self.fs

    @cached_property
    def spectrum(self) -> sp.Spectrum:
        return sp.spectrum(self.x, self.fs)

    @cached_property
    def wavelet(self) -> dict:
        return sp.wavelet_stats(sp.cwt(self.x))


def _d(name, category, arity, formula, func):
    return FeatureDescriptor(name, category, arity, formula, func)


_STATISTICAL = [
    _d("Absolute energy", "statistical", 1, "sum(x^2)",
       lambda b: st.absolute_energy(b.x)),
    _d("Average power", "statistical", 1, "sum(x^2) / ((n-1)*dt)",
       lambda b: st.average_power(b.x, b.fs)),
    _d("ECDF", "statistical", st.N_ECDF,
       "sorted(x)[floor(j*(n-1)/9)] for j=0..9",
       lambda b: st.ecdf(b.x)),
    _d("ECDF Percentile", "statistical", 2,
       "sorted(x)[ceil(p*n)-1] for p in (0.2, 0.8)",
       lambda b: st.ecdf_percentile(b.x)),
    _d("ECDF Percentile Count", "statistical", 2,
       "count(x <= ECDF Percentile_j) for j in (0, 1)",
       lambda b: st.ecdf_percentile_count(b.x)),
    _d("Entropy", "statistical", 1,
       "-sum(p*log2 p) over non-empty bins of the 10-bin histogram, p = count/n",
       lambda b: st.entropy(b.x)),
    _d("Histogram", "statistical", st.N_HIST,
       "counts in 10 equal-width bins over [min, max], last bin closed; constant x -> all in bin 0",
       lambda b: st.histogram(b.x)),
    _d("Interquartile range", "statistical", 1,
       "percentile(x, 75) - percentile(x, 25), linear interpolation",
       lambda b: st.interquartile_range(b.x)),
    _d("Kurtosis", "statistical", 1, "m4/m2^2 - 3 (population moments); 0 if x constant",
       lambda b: st.kurtosis(b.x)),
    _d("Max", "statistical", 1, "max(x)", lambda b: st.maximum(b.x)),
    _d("Mean", "statistical", 1, "sum(x)/n", lambda b: st.mean(b.x)),
    _d("Mean absolute deviation", "statistical", 1, "mean(|x - mean(x)|)",
       lambda b: st.mean_absolute_deviation(b.x)),
    _d("Median", "statistical", 1, "median(x)", lambda b: st.median(b.x)),
    _d("Median absolute deviation", "statistical", 1, "median(|x - median(x)|)",
       lambda b: st.median_absolute_deviation(b.x)),
    _d("Min", "statistical", 1, "min(x)", lambda b: st.minimum(b.x)),
    _d("Peak to peak distance", "statistical", 1, "max(x) - min(x)",
       lambda b: st.peak_to_peak(b.x)),
    _d("Root mean square", "statistical", 1, "sqrt(sum(x^2)/n)",
       lambda b: st.root_mean_square(b.x)),
    _d("Skewness", "statistical", 1, "m3/m2^1.5 (population moments); 0 if x constant",
       lambda b: st.skewness(b.x)),
    _d("Standard deviation", "statistical", 1, "sqrt(m2); 0 if x constant",
       lambda b: st.standard_deviation(b.x)),
    _d("Variance", "statistical", 1, "m2 = mean((x - mean)^2); 0 if x constant",
       lambda b: st.variance(b.x)),
]

_TEMPORAL = [
    _d("Area under the curve", "temporal", 1, "dt * sum((x[i] + x[i+1]) / 2)",
       lambda b: tm.area_under_curve(b.x, b.dt)),
    _d("Autocorrelation", "temporal", 1, "sum(x[i]*x[i+1]) / sum(x^2); 0 if denominator 0",
       lambda b: tm.autocorrelation(b.x)),
    _d("Centroid", "temporal", 1, "sum(t*x^2) / sum(x^2), t = i*dt; 0 if x all zero",
       lambda b: tm.centroid(b.x, b.dt)),
    _d("Mean absolute diff", "temporal", 1, "mean(|x[i+1] - x[i]|)",
       lambda b: tm.mean_absolute_diff(b.x)),
    _d("Mean diff", "temporal", 1, "mean(x[i+1] - x[i])",
       lambda b: tm.mean_diff(b.x)),
    _d("Median absolute diff", "temporal", 1, "median(|x[i+1] - x[i]|)",
       lambda b: tm.median_absolute_diff(b.x)),
    _d("Median diff", "temporal", 1, "median(x[i+1] - x[i])",
       lambda b: tm.median_diff(b.x)),
    _d("Negative turning points", "temporal", 1, "count(x[i-1] > x[i] < x[i+1])",
       lambda b: tm.negative_turning_points(b.x)),
    _d("Neighbourhood peaks", "temporal", 1,
       "count(i in [10, n-10): x[i] > x[j] for all 0 < |i-j| <= 10 and x[i] > mean(x))",
       lambda b: tm.neighbourhood_peaks(b.x)),
    _d("Positive turning points", "temporal", 1, "count(x[i-1] < x[i] > x[i+1])",
       lambda b: tm.positive_turning_points(b.x)),
    _d("Signal distance", "temporal", 1, "sum(sqrt(1 + (x[i+1] - x[i])^2))",
       lambda b: tm.signal_distance(b.x)),
    _d("Slope", "temporal", 1, "least-squares slope of x against t = i*dt",
       lambda b: tm.slope(b.x, b.dt)),
    _d("Sum absolute diff", "temporal", 1, "sum(|x[i+1] - x[i]|)",
       lambda b: tm.sum_absolute_diff(b.x)),
    _d("Zero crossing rate", "temporal", 1,
       "count of strict sign changes between consecutive samples; zeros take the previous sign",
       lambda b: tm.zero_crossing_rate(b.x)),
]

_SPECTRAL = [
    _d("FFT mean coefficient", "spectral", sp.N_FFT_BINS,
       "mean |X_k| over k with floor(20k/N) == j (last bin takes Nyquist), j=0..9; empty bin -> 0",
       lambda b: sp.fft_mean_coefficient(b.spectrum)),
    _d("Fundamental frequency", "spectral", 1,
       "f of argmax |X_k| over k >= 1 (lowest on ties); 0 if all zero",
       lambda b: sp.fundamental_frequency(b.spectrum)),
    _d("Wavelet absolute mean", "spectral", len(sp.WAVELET_WIDTHS),
       "mean(|C_w|) for Ricker widths w=1..9",
       lambda b: b.wavelet["abs_mean"]),
    _d("Wavelet energy", "spectral", len(sp.WAVELET_WIDTHS),
       "E_w = sum(C_w^2) for w=1..9",
       lambda b: b.wavelet["energy"]),
    _d("Wavelet entropy", "spectral", 1,
       "-sum(p_w log2 p_w), p_w = E_w / sum(E)",
       lambda b: b.wavelet["entropy"]),
    _d("Wavelet standard deviation", "spectral", len(sp.WAVELET_WIDTHS),
       "std(C_w) (population) for w=1..9",
       lambda b: b.wavelet["std"]),
    _d("Wavelet variance", "spectral", len(sp.WAVELET_WIDTHS),
       "var(C_w) (population) for w=1..9",
       lambda b: b.wavelet["var"]),
    _d("Human range energy", "spectral", 1,
       "sum(PSD where 0.6 <= f <= 2.5) / sum(PSD); 0 if total 0",
       lambda b: sp.human_range_energy(b.spectrum)),
    _d("LPCC", "spectral", sp.N_LPCC,
       "c_1..c_12 of the order-11 Levinson-Durbin predictor on the biased autocorrelation",
       lambda b: sp.lpcc(b.x)),
    _d("MFCC", "spectral", sp.N_MFCC,
       "first 12 orthonormal DCT-II coefficients of log(E_j + 1e-12), E_j = 26 triangular mel filters "
       "over [0, fs/2] applied to |X_k|^2/N",
       lambda b: sp.mfcc(b.spectrum)),
    _d("Max power spectrum", "spectral", 1, "max(PSD)",
       lambda b: sp.max_power_spectrum(b.spectrum)),
    _d("Maximum frequency", "spectral", 1, "lowest f with cumsum(|X|) >= 0.95 * sum(|X|)",
       lambda b: sp.maximum_frequency(b.spectrum)),
    _d("Median frequency", "spectral", 1, "lowest f with cumsum(PSD) >= 0.5 * sum(PSD)",
       lambda b: sp.median_frequency(b.spectrum)),
    _d("Power bandwidth", "spectral", 1,
       "f_hi - f_lo of the contiguous run around argmax(PSD) where PSD >= max(PSD)/2",
       lambda b: sp.power_bandwidth(b.spectrum)),
    _d("Spectral centroid", "spectral", 1, "c = sum(f*|X|) / sum(|X|)",
       lambda b: sp.spectral_centroid(b.spectrum)),
    _d("Spectral decrease", "spectral", 1,
       "sum_{k>=1}((|X_k| - |X_0|)/k) / sum_{k>=1}|X_k|",
       lambda b: sp.spectral_decrease(b.spectrum)),
    _d("Spectral distance", "spectral", 1,
       "sum(linspace(0, S_K, K) - S), S = cumsum(|X|)",
       lambda b: sp.spectral_distance(b.spectrum)),
    _d("Spectral entropy", "spectral", 1, "-sum(p log2 p), p = PSD / sum(PSD)",
       lambda b: sp.spectral_entropy(b.spectrum)),
    _d("Spectral kurtosis", "spectral", 1, "sum((f-c)^4 |X|) / (sum(|X|) * spread^4)",
       lambda b: sp.spectral_kurtosis(b.spectrum)),
    _d("Spectral positive turning points", "spectral", 1,
       "count(|X_{k-1}| < |X_k| > |X_{k+1}|)",
       lambda b: sp.spectral_positive_turning_points(b.spectrum)),
    _d("Spectral roll-off", "spectral", 1, "lowest f with cumsum(PSD) >= 0.95 * sum(PSD)",
       lambda b: sp.spectral_rolloff(b.spectrum)),
    _d("Spectral roll-on", "spectral", 1, "lowest f with cumsum(PSD) >= 0.05 * sum(PSD)",
       lambda b: sp.spectral_rollon(b.spectrum)),
    _d("Spectral skewness", "spectral", 1, "sum((f-c)^3 |X|) / (sum(|X|) * spread^3)",
       lambda b: sp.spectral_skewness(b.spectrum)),
    _d("Spectral slope", "spectral", 1, "least-squares slope of |X| against f",
       lambda b: sp.spectral_slope(b.spectrum)),
    _d("Spectral spread", "spectral", 1, "sqrt(sum((f-c)^2 |X|) / sum(|X|))",
       lambda b: sp.spectral_spread(b.spectrum)),
    _d("Spectral variation", "spectral", 1,
       "1 - sum(|X_k||X_{k+1}|) / sqrt(sum_{k<K-1}|X_k|^2 * sum_{k>0}|X_k|^2)",
       lambda b: sp.spectral_variation(b.spectrum)),
]

REGISTRY: tuple[FeatureDescriptor, ...] = tuple(_STATISTICAL + _TEMPORAL + _SPECTRAL)

if len({d.name for d in REGISTRY}) != len(REGISTRY):
    raise RuntimeError("duplicate descriptor names in the feature registry")


def descriptors(category: str | None = None) -> tuple[FeatureDescriptor, ...]:
    if category is None:
        return REGISTRY
    if category not in CATEGORIES:
        raise ValueError(f"unknown category {category!r}")
    return tuple(d for d in REGISTRY if d.category == category)


def column_names(category: str | None = None) -> list[str]:
    return [c for d in descriptors(category) for c in d.column_names()]


def arity(category: str | None = None) -> int:
    return sum(d.arity for d in descriptors(category))


def compute_batch(x, fs: float, category: str | None = None) -> np.ndarray:
    """Feature block of shape (m, arity(category)) for an (m, n) batch.

    All-zero rows get 0 for every spectral column.
    """
    batch = SeriesBatch(x, fs)
    n = batch.x.shape[-1]
    cats = CATEGORIES if category is None else (category,)
    need = max(MIN_LENGTH[c] for c in cats)
    if n < need:
        raise SeriesTooShort(n, need)
    blocks = []
    for d in descriptors(category):
        v = np.asarray(d.func(batch), dtype=np.float64)
        blocks.append(v.reshape(len(batch.x), d.arity))
    out = np.concatenate(blocks, axis=1)
    if "spectral" in cats:
        zero_rows = ~np.any(batch.x != 0, axis=-1)
        if zero_rows.any():
            cols = np.concatenate([
                np.full(d.arity, d.category == "spectral") for d in descriptors(category)
            ])
            out[np.ix_(zero_rows, cols)] = 0.0
    return out


def registry_listing() -> list[dict]:
    return [
        {"name": d.name, "category": d.category, "arity": d.arity, "formula": d.formula}
        for d in REGISTRY
    ]
