import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from .._exceptions import ArgumentError, DimensionError, ProtocolError
from .._model import FeatureVector, LabeledFeature, MatchScore, Metric, Polarity
from ..matching import fuse_gallery_scores, template_scores
from ._model import CMCCurve, Gallery

logger = logging.getLogger(__name__)

DEFAULT_MAX_RANK = 10


def _check_probe(probe: FeatureVector, gallery: Gallery) -> None:
    if probe.dim != gallery.dim:
        raise DimensionError(
            f"Probe dimension {probe.dim} does not match gallery dimension "
            f"{gallery.dim}"
        )


def fused_scores(
    probe: FeatureVector, gallery: Gallery, metric: Metric
) -> list[MatchScore]:
    """
    One fused (template-averaged) score per gallery subject, in
    :attr:`Gallery.subjects` order.
    """
    _check_probe(probe, gallery)
    raw = template_scores(probe.values, gallery.matrix, metric)
    return [
        fuse_gallery_scores(
            [MatchScore(float(v), metric.polarity) for v in raw[subject_slice]]
        )
        for subject_slice in gallery.subject_slices
    ]


def _rank_key(subject_id: str, score: MatchScore) -> tuple[float, str]:
    if score.polarity == Polarity.SIMILARITY:
        return (-score.value, subject_id)
    return (score.value, subject_id)


def identify(
    probe: FeatureVector, gallery: Gallery, metric: Metric
) -> list[tuple[str, MatchScore]]:
    """
    Rank the gallery subjects against a probe, best match first.

    Ties are broken by ascending subject identifier.

    :raise DimensionError: If the probe and gallery dimensions differ
    """
    ranked = list(zip(gallery.subjects, fused_scores(probe, gallery, metric)))
    ranked.sort(key=lambda item: _rank_key(*item))
    return ranked


def score_matrix(
    probes: Sequence[LabeledFeature],
    gallery: Gallery,
    metric: Metric,
    *,
    jobs: int = 1,
) -> np.ndarray:
    """
    Fused scores of every probe against every gallery subject.

    :param jobs: Number of worker threads scoring the probes. The result does
        not depend on it.
    :return: ``(n_probes, n_subjects)`` array, columns in
        :attr:`Gallery.subjects` order
    :raise DimensionError: If a probe and the gallery dimensions differ
    """

    def row(probe: LabeledFeature) -> list[float]:
        return [s.value for s in fused_scores(probe.feature, gallery, metric)]

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row, probes))
    else:
        rows = [row(p) for p in probes]

    return np.array(rows, dtype=np.float64).reshape(
        len(probes), len(gallery.subjects)
    )


def true_rank(probe: LabeledFeature, gallery: Gallery, metric: Metric) -> int:
    """
    1-based position of the probe's own subject in the ranked gallery.
    """
    for position, (subject_id, _) in enumerate(
        identify(probe.feature, gallery, metric), start=1
    ):
        if subject_id == probe.subject_id:
            return position

    raise ProtocolError("Probe subject not enrolled", subjects=[probe.subject_id])


def _true_ranks(
    scores: np.ndarray,
    probe_subjects: Sequence[str],
    gallery: Gallery,
    polarity: Polarity,
) -> np.ndarray:
    # Same order as identify: best score first, ties by ascending subject id
    signed = -scores if polarity == Polarity.SIMILARITY else scores
    subjects = np.array(gallery.subjects)
    column = {s: i for i, s in enumerate(gallery.subjects)}
    own_column = np.array([column[s] for s in probe_subjects])
    own = signed[np.arange(len(probe_subjects)), own_column][:, None]
    tied_before = (signed == own) & (subjects[None, :] < subjects[own_column][:, None])
    better = np.count_nonzero(signed < own, axis=1)
    return 1 + better + np.count_nonzero(tied_before, axis=1)


def compute_cmc(
    probes: Sequence[LabeledFeature],
    gallery: Gallery,
    metric: Metric,
    max_rank: int = DEFAULT_MAX_RANK,
    *,
    jobs: int = 1,
) -> CMCCurve:
    """
    Closed-set cumulative match characteristic of a probe set against a
    gallery, ranked from its :func:`score_matrix`.

    :param jobs: Number of worker threads used to score the probes. The
        result does not depend on it.
    :raise ProtocolError: If a probe subject is not enrolled
    """
    if not probes:
        raise ArgumentError("Cannot compute a CMC curve without probes")
    if max_rank < 1:
        raise ArgumentError(f"max_rank must be >= 1, got {max_rank}")

    enrolled = set(gallery.subjects)
    missing = {p.subject_id for p in probes} - enrolled
    if missing:
        raise ProtocolError("Probe subjects missing from the gallery", subjects=missing)

    for probe in probes:
        _check_probe(probe.feature, gallery)

    scores = score_matrix(probes, gallery, metric, jobs=jobs)
    probe_subjects = [p.subject_id for p in probes]
    ranks = _true_ranks(scores, probe_subjects, gallery, metric.polarity)

    hits = np.bincount(np.minimum(ranks, max_rank + 1), minlength=max_rank + 2)
    cumulative = np.cumsum(hits[1 : max_rank + 1])
    accuracy = tuple(float(c) / len(probes) for c in cumulative)

    logger.info(
        "CMC over %d probes and %d subjects: rank-1 %.4f",
        len(probes),
        len(enrolled),
        accuracy[0],
    )
    return CMCCurve(max_rank=max_rank, accuracy=accuracy, n_probes=len(probes))
