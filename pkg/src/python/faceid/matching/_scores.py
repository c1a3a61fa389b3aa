import math
from typing import Sequence

import numpy as np

from .._exceptions import ArgumentError, DegenerateVectorError, DimensionError
from .._model import FeatureVector, MatchScore, Metric, Polarity


def _check_dims(u: FeatureVector, v: FeatureVector) -> None:
    if u.dim != v.dim:
        raise DimensionError(
            f"Cannot match a {u.dim}-dim {u.descriptor_id.value} vector against "
            f"a {v.dim}-dim {v.descriptor_id.value} vector"
        )


def cosine_similarity(u: FeatureVector, v: FeatureVector) -> MatchScore:
    """
    Cosine similarity of two vectors, clamped to ``[-1, 1]``.

    :raise DimensionError: If the dimensions differ
    :raise DegenerateVectorError: If either vector has zero norm
    """
    _check_dims(u, v)
    a = u.values.astype(np.float64)
    b = v.values.astype(np.float64)
    norm_a = np.sqrt(np.dot(a, a))
    norm_b = np.sqrt(np.dot(b, b))
    if norm_a == 0 or norm_b == 0:
        raise DegenerateVectorError(
            f"Cosine similarity is undefined for a zero-norm "
            f"{u.descriptor_id.value} vector"
        )

    sim = float(np.dot(a, b) / (norm_a * norm_b))
    return MatchScore(min(1.0, max(-1.0, sim)), Polarity.SIMILARITY)


def euclidean_distance(u: FeatureVector, v: FeatureVector) -> MatchScore:
    """
    Euclidean distance of two vectors.

    :raise DimensionError: If the dimensions differ
    """
    _check_dims(u, v)
    diff = v.values.astype(np.float64) - u.values.astype(np.float64)
    return MatchScore(float(np.sqrt(np.dot(diff, diff))), Polarity.DISTANCE)


def match(u: FeatureVector, v: FeatureVector, metric: Metric) -> MatchScore:
    if metric == Metric.COSINE:
        return cosine_similarity(u, v)
    return euclidean_distance(u, v)


def fuse_gallery_scores(scores: Sequence[MatchScore]) -> MatchScore:
    """
    Fuse the scores of a probe against several gallery templates of the
    same subject into their arithmetic mean.

    :raise ArgumentError: On an empty list or on mixed polarities
    """
    if not scores:
        raise ArgumentError("Cannot fuse an empty list of scores")

    polarities = {s.polarity for s in scores}
    if len(polarities) != 1:
        raise ArgumentError("Cannot fuse scores of mixed polarity")

    # fsum is exactly rounded, hence independent of the input order
    return MatchScore(
        math.fsum(s.value for s in scores) / len(scores), scores[0].polarity
    )


def template_scores(
    probe: np.ndarray, templates: np.ndarray, metric: Metric
) -> np.ndarray:
    """
    Scores of one probe vector against every row of a template matrix, in
    double precision.

    :param probe: ``(dim,)`` array
    :param templates: ``(n_templates, dim)`` array
    :return: ``(n_templates,)`` score array
    :raise DimensionError: If the dimensions differ
    :raise DegenerateVectorError: If a zero-norm vector is matched with cosine
    """
    if probe.shape[0] != templates.shape[1]:
        raise DimensionError(
            f"Cannot match a {probe.shape[0]}-dim probe against "
            f"{templates.shape[1]}-dim templates"
        )

    p = probe.astype(np.float64)
    t = templates.astype(np.float64)
    if metric == Metric.COSINE:
        p_norm = np.sqrt(np.dot(p, p))
        t_norm = np.sqrt(np.einsum("ij,ij->i", t, t))
        if p_norm == 0 or np.any(t_norm == 0):
            raise DegenerateVectorError(
                "Cosine similarity is undefined for zero-norm vectors"
            )
        return np.clip((t @ p) / (t_norm * p_norm), -1.0, 1.0)

    diff = t - p
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))
