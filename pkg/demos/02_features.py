"""Tour of the window feature registry on a known signal.

Run:  python demos/02_features.py
"""
import numpy as np

from kinemark.features import compute_spectral, compute_statistical, compute_temporal, registry_listing
from kinemark.kinematics import build_stack, window_stack

fs = 60.0
t = np.arange(60) / fs
x = np.sin(2 * np.pi * 5 * t) + 0.3 * t

listing = registry_listing()
print(f"{len(listing)} descriptors; first few:")
for row in listing[:5]:
    print(f"  {row['name']:<28} {row['category']:<11} arity {row['arity']}")

stat, temp, spec = compute_statistical(x), compute_temporal(x, fs), compute_spectral(x, fs)
print(f"\nmean {stat['Mean']:.4f}   rms {stat['Root mean square']:.4f}")
print(f"slope {temp['Slope']:.4f}; the ramp alone gives "
      f"{compute_temporal(0.3 * t, fs)['Slope']:.4f}, the sine pulls the fit down")
print(f"fundamental {spec['Fundamental frequency']:.2f} Hz, centroid {spec['Spectral centroid']:.2f} Hz")

# One second of six channels expands into movement, velocity, acceleration and jerk.
rng = np.random.default_rng(0)
channels = np.cumsum(rng.normal(size=(6, 240)), axis=1) * 0.01
stack = build_stack(channels, fs, "demo", 1)
windows = window_stack(stack, 1.0)
print(f"\n{len(windows)} one-second windows; orders: {list(windows[0].samples)}")
for order, block in windows[0].samples.items():
    print(f"  {order:<12} max |value| {np.abs(block).max():9.4f}")
