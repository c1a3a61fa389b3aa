from ._io import (
    DEFAULT_EMBEDDING_DIM,
    EMBEDDING_HEADER,
    FEATURE_HEADER,
    load_embeddings,
    load_features,
    write_embeddings,
    write_features,
)
from ._registry import model_info, model_registry, reference_timings

__all__ = [
    "DEFAULT_EMBEDDING_DIM",
    "EMBEDDING_HEADER",
    "FEATURE_HEADER",
    "load_embeddings",
    "load_features",
    "model_info",
    "model_registry",
    "reference_timings",
    "write_embeddings",
    "write_features",
]
