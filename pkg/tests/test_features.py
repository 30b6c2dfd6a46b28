import io
import math

import numpy as np
import pytest

import oracles
from kinemark.errors import SeriesTooShort
from kinemark.features import (
    REGISTRY,
    FeatureMatrix,
    arity,
    column_names,
    compute_batch,
    compute_spectral,
    compute_statistical,
    compute_temporal,
    descriptors,
    extract_corpus,
    extract_window,
    feature_names,
    parse_feature_name,
    parseval_residual,
    registry_listing,
)
from kinemark.features import temporal as tm
from kinemark.kinematics import build_stack, window_stack

FS = 60.0


def test_registry_shape():
    names = [d.name for d in REGISTRY]
    assert len(names) == len(set(names)) == 60
    assert arity("statistical") == 40
    assert arity("temporal") == 14
    assert arity("spectral") == 89
    assert len(column_names()) == arity() == 143
    assert len(registry_listing()) == 60
    assert {r["category"] for r in registry_listing()} == {"statistical", "temporal", "spectral"}


def test_arity_is_data_independent(rng):
    for n in (8, 21, 60, 61, 300):
        assert compute_batch(rng.normal(size=(2, n)), FS).shape == (2, 143)


def test_statistical_examples():
    f = compute_statistical([1, 2, 3, 4])
    assert f["Mean"] == 2.5
    assert f["Peak to peak distance"] == 3
    assert f["Variance"] == 1.25
    assert compute_statistical([3, 4, 3, 4])["Root mean square"] == pytest.approx(math.sqrt(12.5),
                                                                                  abs=1e-12)


def test_constant_conventions():
    f = compute_statistical([7, 7, 7, 7])
    assert f["Variance"] == 0 and f["Skewness"] == 0 and f["Kurtosis"] == 0
    assert f["Entropy"] == 0
    assert f["Histogram_0"] == 4


def test_temporal_examples():
    assert compute_temporal([1, -1, 1, -1])["Zero crossing rate"] == 3
    for rate in (10.0, 60.0, 250.0):
        t = np.arange(50) / rate
        f = compute_temporal(3 * t, rate)
        assert f["Slope"] == pytest.approx(3.0, rel=1e-9)
        assert f["Negative turning points"] == 0


def test_three_sample_hand_values():
    x = np.array([[0.0, 2.0, 1.0]])
    assert tm.sum_absolute_diff(x)[0] == 3
    assert tm.mean_diff(x)[0] == 0.5
    assert tm.area_under_curve(x, 1.0)[0] == 2.5
    # the public entry point enforces the 4-sample minimum
    with pytest.raises(SeriesTooShort):
        compute_temporal([0.0, 2.0, 1.0], 1.0)


def test_minimum_lengths():
    with pytest.raises(SeriesTooShort):
        compute_statistical([1, 2, 3])
    with pytest.raises(SeriesTooShort):
        compute_spectral(np.arange(7.0))
    assert len(compute_spectral(np.arange(8.0))) == 89


def test_sine_fundamental_and_centroid():
    t = np.arange(60) / FS
    f = compute_spectral(np.sin(2 * np.pi * 5 * t), FS)
    assert abs(f["Fundamental frequency"] - 5.0) < 1e-6
    assert abs(f["Spectral centroid"] - 5.0) < 1e-6


def test_zero_signal_conventions():
    f = compute_spectral(np.zeros(60), FS)
    assert all(f[f"Wavelet energy_{k}"] == 0 for k in range(9))
    assert f["Human range energy"] == 0
    assert f["Spectral entropy"] == 0
    assert all(v == 0 for v in f.values())


def test_parseval(rng):
    x = rng.normal(size=(50, 60)) * rng.uniform(0.01, 100, size=(50, 1))
    assert parseval_residual(x).max() < 1e-9


def test_finite_for_degenerate_series(rng):
    batch = np.vstack([np.zeros(60), np.full(60, 3.5), np.full(60, -1e6),
                       np.r_[np.zeros(59), 1.0], np.r_[1.0, np.zeros(59)],
                       np.tile([1.0, -1.0], 30), np.linspace(-1, 1, 60),
                       rng.normal(size=60) * 1e-150, rng.normal(size=60) * 1e150,
                       np.zeros(8), ][:-1])
    out = compute_batch(batch, FS)
    assert np.isfinite(out).all()
    assert np.isfinite(compute_batch(np.zeros((1, 8)), FS)).all()
    assert np.isfinite(compute_batch(np.full((1, 8), 2.0), FS)).all()


def test_oracle_agreement_odd_length(rng):
    # the acceptance suite covers length 60; odd lengths exercise the Nyquist-free path
    X = np.array([oracles.random_series(rng, n=61) for _ in range(15)])
    errs = oracles.relative_errors(compute_batch(X, FS), X)
    cats = {d.name: d.category for d in descriptors()}
    for name, err in errs.items():
        assert err <= (1e-6 if cats[name] == "spectral" else 1e-9), name


def test_oracle_agreement_other_rate(rng):
    X = np.array([oracles.random_series(rng, n=100, fs=100.0) for _ in range(10)])
    errs = oracles.relative_errors(compute_batch(X, 100.0), X, 100.0)
    cats = {d.name: d.category for d in descriptors()}
    for name, err in errs.items():
        assert err <= (1e-6 if cats[name] == "spectral" else 1e-9), name


def test_determinism(rng):
    X = rng.normal(size=(20, 60))
    assert np.array_equal(compute_batch(X, FS), compute_batch(X.copy(), FS))


def test_feature_names_and_parsing():
    names = feature_names(["movement"])
    assert len(names) == 6 * 143 == 858
    assert names[0] == "movement_X_Absolute energy"
    assert "movement_Roll_Fundamental frequency" in names
    assert parse_feature_name("jerk_Pitch_ECDF_3") == ("jerk", "Pitch", "ECDF_3")
    full = feature_names(["movement", "velocity", "acceleration", "jerk"])
    assert len(full) == 4 * len(names)
    assert full[:858] == names


def test_extract_window_layout(rng):
    stack = build_stack(rng.normal(size=(6, 120)), FS, "p", 0)
    w = window_stack(stack)[1]
    v = extract_window(w, ["movement", "velocity"])
    assert v.values.shape == (2 * 858,)
    assert v.window_index == 1 and v.participant_id == "p" and v.label == 0
    # the block for (velocity, Roll) equals the per-series computation
    i = v.names.index("velocity_Roll_Absolute energy")
    roll = w.samples["velocity"][4]
    assert np.array_equal(v.values[i:i + 143], compute_batch(roll[None, :], FS)[0])


def test_matrix_csv_round_trip(rng, tmp_path):
    recs = _recordings(rng)
    m = extract_corpus(recs, ["movement", "velocity"])
    buf = io.StringIO()
    m.to_csv(buf)
    back = FeatureMatrix.from_csv(io.StringIO(buf.getvalue()))
    assert back.names == m.names
    assert np.array_equal(back.values, m.values)
    assert back.participant_ids.tolist() == m.participant_ids.tolist()
    assert back.labels.tolist() == m.labels.tolist()
    assert buf.getvalue().splitlines()[0].startswith("participant_id,label,window_index,")


def test_matrix_selection(rng):
    m = extract_corpus(_recordings(rng))
    assert m.values.shape == (30, 3432)
    s1 = m.select_orders(["movement"])
    assert s1.names == feature_names(["movement"])
    assert np.array_equal(s1.values, m.values[:, :858])
    sub = m.rows_for(["b"])
    assert set(sub.participant_ids) == {"b"} and sub.n_rows == 10
    assert set(m.rows_for(["a"]).labels.tolist()) == {0, 1}


def _recordings(rng):
    from kinemark.corpus import MotionRecording

    return [MotionRecording("a", rng.normal(size=(6, 1200)), "Sick"),
            MotionRecording("b", rng.normal(size=(6, 900)), "Well")]
