"""Cybersickness prediction from head-motion kinematics.

Subpackages follow the pipeline: ``corpus`` (ingestion and labelling),
``kinematics`` (derivatives and windows), ``features`` (per-series
descriptors), ``prep`` (splits, scaling, selection, oversampling), ``models``
and ``harness`` (Monte Carlo experiments and reports).
"""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("kinemark")
except PackageNotFoundError:  # running from a source checkout
    __version__ = "0.0.0"
