"""Per-series statistical, temporal and spectral descriptors."""
from .extract import (
    FeatureMatrix,
    FeatureVector,
    compute_spectral,
    compute_statistical,
    compute_temporal,
    extract_corpus,
    extract_matrix,
    extract_window,
    feature_names,
    parse_feature_name,
    windows_from_corpus,
)
from .registry import (
    REGISTRY,
    REGISTRY_VERSION,
    FeatureDescriptor,
    arity,
    column_names,
    compute_batch,
    descriptors,
    registry_listing,
)
from .spectral import parseval_residual

__all__ = [
    "FeatureDescriptor", "FeatureMatrix", "FeatureVector", "REGISTRY", "REGISTRY_VERSION",
    "arity", "column_names", "compute_batch", "compute_spectral", "compute_statistical",
    "compute_temporal", "descriptors", "extract_corpus", "extract_matrix", "extract_window",
    "feature_names", "parse_feature_name", "parseval_residual", "registry_listing",
    "windows_from_corpus",
]
