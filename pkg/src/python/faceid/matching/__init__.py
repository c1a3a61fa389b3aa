from ._scores import (
    cosine_similarity,
    euclidean_distance,
    fuse_gallery_scores,
    match,
    template_scores,
)

__all__ = [
    "cosine_similarity",
    "euclidean_distance",
    "fuse_gallery_scores",
    "match",
    "template_scores",
]
