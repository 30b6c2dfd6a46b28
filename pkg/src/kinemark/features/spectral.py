"""Spectral descriptors built on the rectangular-window DFT of each series.

Three representations feed the descriptors:

* ``magnitude`` - one-sided |DFT| at frequencies k * fs / N, k = 0..N//2
* ``psd`` - periodogram density |X_k|^2 / (fs N), doubled except at DC and Nyquist
* the Ricker continuous wavelet transform at integer widths 1..9

Cumulative-threshold features return the lowest frequency bin whose running
sum reaches the threshold.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct, rfft
from scipy.signal import fftconvolve

N_FFT_BINS = 10
WAVELET_WIDTHS = tuple(range(1, 10))
LPC_ORDER = 11
N_LPCC = 12
N_MEL_FILTERS = 26
N_MFCC = 12
MFCC_FLOOR = 1e-12
HUMAN_BAND_HZ = (0.6, 2.5)
ROLLOFF = 0.95
ROLLON = 0.05
MAX_FREQ_FRACTION = 0.95
LEVINSON_STOP = 1e-12


@dataclass(frozen=True)
class Spectrum:
    dft: np.ndarray
    magnitude: np.ndarray
    psd: np.ndarray
    freqs: np.ndarray
    n: int
    fs: float


def spectrum(x, fs) -> Spectrum:
    n = x.shape[-1]
    X = rfft(x, axis=-1)
    mag = np.abs(X)
    psd = (X.real ** 2 + X.imag ** 2) / (fs * n)
    if n % 2 == 0:
        psd[:, 1:-1] *= 2.0
    else:
        psd[:, 1:] *= 2.0
    freqs = np.arange(X.shape[-1]) * (fs / n)
    return Spectrum(X, mag, psd, freqs, n, fs)


def parseval_residual(x) -> np.ndarray:
    """Relative gap between time-domain energy and (1/N) sum |DFT|^2 (full spectrum)."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    full = np.fft.fft(x, axis=-1)
    time_e = np.sum(x * x, axis=-1)
    freq_e = np.sum(np.abs(full) ** 2, axis=-1) / x.shape[-1]
    scale = np.maximum(time_e, np.finfo(float).tiny)
    return np.abs(time_e - freq_e) / scale


def _safe_div(num, den):
    zero = den == 0
    return np.where(zero, 0.0, num / np.where(zero, 1.0, den))


def _first_reaching(values, fraction, freqs):
    cum = np.cumsum(values, axis=-1)
    total = cum[:, -1:]
    idx = np.argmax(cum >= fraction * total, axis=-1)
    return np.where(total[:, 0] > 0, freqs[idx], 0.0)


def fft_mean_coefficient(sp: Spectrum):
    # per-row reductions (not a matmul) so a row's value never depends on the batch
    k = np.arange(sp.magnitude.shape[-1])
    bins = np.minimum((2 * N_FFT_BINS * k) // sp.n, N_FFT_BINS - 1)
    out = np.zeros((sp.magnitude.shape[0], N_FFT_BINS))
    for j in range(N_FFT_BINS):
        sel = bins == j
        if sel.any():
            out[:, j] = sp.magnitude[:, sel].sum(axis=-1) / sel.sum()
    return out


def fundamental_frequency(sp: Spectrum):
    ac = sp.magnitude[:, 1:]
    if ac.shape[-1] == 0:
        return np.zeros(len(ac))
    peak = np.argmax(ac, axis=-1)
    return np.where(ac.max(axis=-1) > 0, sp.freqs[1:][peak], 0.0)


def ricker(points: int, width: float) -> np.ndarray:
    """Ricker (Mexican hat) wavelet sampled on ``points`` centred samples."""
    amp = 2.0 / (np.sqrt(3.0 * width) * np.pi ** 0.25)
    t = np.arange(points) - (points - 1) / 2.0
    tsq = (t / width) ** 2
    return amp * (1.0 - tsq) * np.exp(-tsq / 2.0)


def cwt(x, widths=WAVELET_WIDTHS) -> np.ndarray:
    """(m, len(widths), n) Ricker CWT with 'same'-mode alignment."""
    m, n = x.shape
    out = np.empty((m, len(widths), n))
    for j, w in enumerate(widths):
        L = min(10 * w, n)
        full = fftconvolve(x, ricker(L, w)[None, :], mode="full", axes=-1)
        off = (L - 1) // 2
        out[:, j] = full[:, off:off + n]
    return out


def wavelet_stats(coeffs):
    energy = np.sum(coeffs ** 2, axis=-1)
    p_total = energy.sum(axis=-1, keepdims=True)
    p = _safe_div(energy, p_total)
    with np.errstate(divide="ignore", invalid="ignore"):
        ent = -np.sum(np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0), axis=-1)
    return {
        "abs_mean": np.mean(np.abs(coeffs), axis=-1),
        "energy": energy,
        "entropy": ent + 0.0,
        "std": np.std(coeffs, axis=-1),
        "var": np.var(coeffs, axis=-1),
    }


def human_range_energy(sp: Spectrum):
    lo, hi = HUMAN_BAND_HZ
    band = (sp.freqs >= lo) & (sp.freqs <= hi)
    return _safe_div(sp.psd[:, band].sum(axis=-1), sp.psd.sum(axis=-1))


def autocorrelation_lags(x, max_lag):
    n = x.shape[-1]
    r = np.zeros((x.shape[0], max_lag + 1))
    for k in range(min(max_lag, n - 1) + 1):
        r[:, k] = np.sum(x[:, :n - k] * x[:, k:], axis=-1)
    return r


def lpc(x, order=LPC_ORDER):
    """Predictor coefficients a_1..a_p (x[t] ~ sum a_k x[t-k]) by Levinson-Durbin.

    Rows with zero energy get all-zero coefficients; the recursion freezes a row
    once its prediction error collapses below ``LEVINSON_STOP * r0``.
    """
    r = autocorrelation_lags(x, order)
    m = x.shape[0]
    a = np.zeros((m, order + 1))
    err = r[:, 0].copy()
    active = r[:, 0] > 0
    for i in range(1, order + 1):
        acc = r[:, i] - np.sum(a[:, 1:i] * r[:, i - 1:0:-1], axis=-1)
        k = np.where(active, acc / np.where(active, err, 1.0), 0.0)
        new = a.copy()
        new[:, i] = k
        new[:, 1:i] = a[:, 1:i] - k[:, None] * a[:, i - 1:0:-1]
        a = np.where(active[:, None], new, a)
        err = np.where(active, err * (1.0 - k * k), err)
        active &= err > LEVINSON_STOP * r[:, 0]
    return a[:, 1:]


def lpc_cepstrum(a, n_coeff=N_LPCC):
    """Cepstral coefficients c_1..c_n of the all-pole model 1 / (1 - sum a_k z^-k)."""
    m, p = a.shape
    c = np.zeros((m, n_coeff + 1))
    for i in range(1, n_coeff + 1):
        acc = a[:, i - 1].copy() if i <= p else np.zeros(m)
        for k in range(max(1, i - p), i):
            acc += (k / i) * c[:, k] * a[:, i - k - 1]
        c[:, i] = acc
    return c[:, 1:]


def lpcc(x):
    return lpc_cepstrum(lpc(x))


def hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m) / 2595.0) - 1.0)


def mel_filterbank(freqs, fs, n_filters=N_MEL_FILTERS):
    edges = mel_to_hz(np.linspace(0.0, hz_to_mel(fs / 2.0), n_filters + 2))
    lo, mid, hi = edges[:-2, None], edges[1:-1, None], edges[2:, None]
    f = freqs[None, :]
    rise = (f - lo) / (mid - lo)
    fall = (hi - f) / (hi - mid)
    return np.maximum(0.0, np.minimum(rise, fall))


def mfcc(sp: Spectrum):
    power = (sp.dft.real ** 2 + sp.dft.imag ** 2) / sp.n
    energies = np.sum(power[:, None, :] * mel_filterbank(sp.freqs, sp.fs)[None], axis=-1)
    return dct(np.log(energies + MFCC_FLOOR), type=2, norm="ortho", axis=-1)[:, :N_MFCC]


def max_power_spectrum(sp: Spectrum):
    return sp.psd.max(axis=-1)


def maximum_frequency(sp: Spectrum):
    return _first_reaching(sp.magnitude, MAX_FREQ_FRACTION, sp.freqs)


def median_frequency(sp: Spectrum):
    return _first_reaching(sp.psd, 0.5, sp.freqs)


def power_bandwidth(sp: Spectrum):
    """Width in Hz of the contiguous run around the PSD peak at >= half the peak."""
    psd = sp.psd
    K = psd.shape[-1]
    k = np.arange(K)[None, :]
    peak = np.argmax(psd, axis=-1)[:, None]
    below = psd < psd.max(axis=-1, keepdims=True) / 2.0
    lo = np.max(np.where(below & (k < peak), k, -1), axis=-1) + 1
    hi = np.min(np.where(below & (k > peak), k, K), axis=-1) - 1
    return sp.freqs[hi] - sp.freqs[lo]


def _moments(sp: Spectrum):
    M, f = sp.magnitude, sp.freqs[None, :]
    total = M.sum(axis=-1)
    c = _safe_div(np.sum(f * M, axis=-1), total)
    d = f - c[:, None]
    spread = np.sqrt(_safe_div(np.sum(d * d * M, axis=-1), total))
    return total, c, d, spread


def spectral_centroid(sp: Spectrum):
    return _moments(sp)[1]


def spectral_spread(sp: Spectrum):
    return _moments(sp)[3]


def spectral_skewness(sp: Spectrum):
    total, _, d, spread = _moments(sp)
    return _safe_div(np.sum(d ** 3 * sp.magnitude, axis=-1), total * spread ** 3)


def spectral_kurtosis(sp: Spectrum):
    total, _, d, spread = _moments(sp)
    return _safe_div(np.sum(d ** 4 * sp.magnitude, axis=-1), total * spread ** 4)


def spectral_decrease(sp: Spectrum):
    M = sp.magnitude
    k = np.arange(1, M.shape[-1])
    num = np.sum((M[:, 1:] - M[:, :1]) / k, axis=-1)
    return _safe_div(num, M[:, 1:].sum(axis=-1))


def spectral_distance(sp: Spectrum):
    cum = np.cumsum(sp.magnitude, axis=-1)
    K = cum.shape[-1]
    line = cum[:, -1:] * (np.arange(K) / (K - 1))[None, :]
    return np.sum(line - cum, axis=-1)


def spectral_entropy(sp: Spectrum):
    p = _safe_div(sp.psd, sp.psd.sum(axis=-1, keepdims=True))
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return -np.sum(terms, axis=-1) + 0.0


def spectral_positive_turning_points(sp: Spectrum):
    M = sp.magnitude
    mid = M[:, 1:-1]
    return np.sum((M[:, :-2] < mid) & (mid > M[:, 2:]), axis=-1).astype(np.float64)


def spectral_rolloff(sp: Spectrum):
    return _first_reaching(sp.psd, ROLLOFF, sp.freqs)


def spectral_rollon(sp: Spectrum):
    return _first_reaching(sp.psd, ROLLON, sp.freqs)


def spectral_slope(sp: Spectrum):
    f = sp.freqs - sp.freqs.mean()
    M = sp.magnitude - sp.magnitude.mean(axis=-1, keepdims=True)
    return np.sum(f * M, axis=-1) / np.sum(f * f)


def spectral_variation(sp: Spectrum):
    M = sp.magnitude
    a, b = M[:, :-1], M[:, 1:]
    den = np.sqrt(np.sum(a * a, axis=-1)) * np.sqrt(np.sum(b * b, axis=-1))
    return np.where(den == 0, 0.0, 1.0 - _safe_div(np.sum(a * b, axis=-1), den))
