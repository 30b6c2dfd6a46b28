import numpy as np
import pytest

from kinemark.errors import NonIntegralWindow, SeriesTooShort
from kinemark.kinematics import (
    ORDERS,
    build_stack,
    differentiate,
    orders_for,
    window_array,
    window_stack,
)

DT = 1 / 60


def test_constant_and_ramp_are_exact():
    assert differentiate([5, 5, 5, 5], DT).tolist() == [0, 0, 0, 0]
    ramp = 3 * np.arange(20) * DT
    assert np.allclose(differentiate(ramp, DT), 3.0, rtol=0, atol=1e-12)


def test_endpoint_and_interior_rules():
    x = np.array([0.0, 1.0, 4.0, 9.0, 16.0])
    d = differentiate(x, 0.5)
    assert d[0] == (1 - 0) / 0.5
    assert d[-1] == (16 - 9) / 0.5
    assert d[2] == (9 - 1) / (2 * 0.5)


def test_sine_velocity_against_analytic():
    i = np.arange(600)
    x = np.sin(2 * np.pi * i / 60)
    v = differentiate(x, DT)
    truth = 2 * np.pi * np.cos(2 * np.pi * i / 60)
    assert np.max(np.abs(v[1:-1] - truth[1:-1])) < 0.02


def test_too_short():
    with pytest.raises(SeriesTooShort):
        differentiate([1.0, 2.0], DT)


def test_cubic_jerk():
    t = np.arange(60) * DT
    channels = np.tile(t ** 3, (6, 1))
    jerk = build_stack(channels, 60.0).orders["jerk"]
    # the three nested stencils reach 3 samples in from each end
    assert np.max(np.abs(jerk[:, 3:-3] - 6.0)) < 0.05


def test_stack_shapes_and_zero_input():
    stack = build_stack(np.zeros((6, 30)), 60.0)
    for o in ORDERS:
        assert stack.orders[o].shape == (6, 30)
        assert not stack.orders[o].any()
    assert stack.as_array().shape == (4, 6, 30)
    with pytest.raises(SeriesTooShort):
        build_stack(np.zeros((6, 3)), 60.0)


def test_stack_orders_are_repeated_differentiation(rng):
    x = rng.normal(size=(6, 40))
    s = build_stack(x, 60.0)
    assert np.array_equal(s.orders["velocity"], differentiate(x, DT))
    assert np.array_equal(s.orders["acceleration"], differentiate(s.orders["velocity"], DT))
    assert np.array_equal(s.orders["jerk"], differentiate(s.orders["acceleration"], DT))


def test_ten_one_second_windows(rng):
    stack = build_stack(rng.normal(size=(6, 600)), 60.0, "p", 1)
    wins = window_stack(stack, 1.0)
    assert len(wins) == 10
    assert all(w.length == 60 for w in wins)
    assert wins[0].samples["movement"].size == 360
    assert [w.start for w in wins] == list(range(0, 600, 60))
    assert all(w.participant_id == "p" and w.label == 1 for w in wins)


def test_overlapping_stride_count(rng):
    stack = build_stack(rng.normal(size=(6, 600)), 60.0)
    n = len(window_stack(stack, 1.0, 0.5))
    assert n == (600 - 60) // 30 + 1


def test_window_longer_than_segment(rng):
    stack = build_stack(rng.normal(size=(6, 59)), 60.0)
    assert window_stack(stack, 1.0) == []
    assert window_array(stack, 1.0).shape == (0, 4, 6, 60)


def test_non_integral_window(rng):
    stack = build_stack(rng.normal(size=(6, 100)), 60.0)
    with pytest.raises(NonIntegralWindow):
        window_stack(stack, 1.0 / 7)
    with pytest.raises(NonIntegralWindow):
        window_stack(stack, 1.0, 0.011)
    with pytest.raises(NonIntegralWindow):
        window_stack(stack, 3 / 60)


def test_window_array_matches_window_stack(rng):
    stack = build_stack(rng.normal(size=(6, 200)), 60.0)
    arr = window_array(stack, 0.5, 0.25)
    wins = window_stack(stack, 0.5, 0.25)
    assert arr.shape == (len(wins), 4, 6, 30)
    for a, w in zip(arr, wins):
        for k, o in enumerate(ORDERS):
            assert np.array_equal(a[k], w.samples[o])


def test_orders_for():
    assert orders_for(["jerk", "movement"]) == ("movement", "jerk")
    with pytest.raises(ValueError):
        orders_for(["velocity"])
    with pytest.raises(ValueError):
        orders_for(["movement", "snap"])
