import logging
from typing import Iterable

import numpy as np

from .._exceptions import ArgumentError, ProtocolError
from .._model import DescriptorId, LabeledFeature
from ._model import Gallery, ProbeSet

logger = logging.getLogger(__name__)

DEFAULT_GALLERY_PER_SUBJECT = 12
DEFAULT_PROBES_PER_SUBJECT = 100
DEFAULT_GALLERY_SEED = 42
DEFAULT_PROBE_SEED = 43


def group_by_subject(
    features: Iterable[LabeledFeature],
) -> dict[str, list[LabeledFeature]]:
    """
    Group labeled features by subject, each group sorted by key, subjects in
    lexicographic order.

    :raise ArgumentError: On duplicate (subject, image, condition) keys or on
        mixed descriptors/dimensions
    """
    grouped: dict[str, list[LabeledFeature]] = {}
    seen = set()
    layouts = set()
    for feat in features:
        if feat.key in seen:
            raise ArgumentError(
                "Duplicate feature for subject '%s', image '%s', condition '%s'"
                % (feat.subject_id, feat.image_id, feat.condition.value)
            )
        seen.add(feat.key)
        layouts.add((feat.feature.descriptor_id, feat.feature.dim))
        grouped.setdefault(feat.subject_id, []).append(feat)

    if len(layouts) > 1:
        raise ArgumentError(
            "Features must share descriptor and dimension, got "
            + ", ".join(f"{d.value}/{n}" for d, n in sorted(layouts))
        )

    return {s: sorted(grouped[s], key=_sort_key) for s in sorted(grouped)}


def _sort_key(feat: LabeledFeature) -> tuple[str, str, str]:
    return (feat.subject_id, feat.image_id, feat.condition.value)


def _sample(
    rng: np.random.Generator, pool: list[LabeledFeature], n: int
) -> list[LabeledFeature]:
    if n >= len(pool):
        return list(pool)
    chosen = np.sort(rng.choice(len(pool), size=n, replace=False))
    return [pool[i] for i in chosen]


def enroll_gallery(
    features: Iterable[LabeledFeature],
    per_subject: int = DEFAULT_GALLERY_PER_SUBJECT,
    seed: int = DEFAULT_GALLERY_SEED,
) -> Gallery:
    """
    Enroll a gallery with a seeded random sample of ``per_subject`` templates
    for every subject.

    :raise ProtocolError: If any subject has fewer than ``per_subject``
        features
    """
    if per_subject < 1:
        raise ArgumentError(f"per_subject must be >= 1, got {per_subject}")

    grouped = group_by_subject(features)
    if not grouped:
        raise ProtocolError("Cannot enroll a gallery from an empty feature set")

    short = [s for s, feats in grouped.items() if len(feats) < per_subject]
    if short:
        raise ProtocolError(
            f"Fewer than {per_subject} gallery images for subjects", subjects=short
        )

    rng = np.random.default_rng(seed)
    entries = [
        entry
        for feats in grouped.values()
        for entry in _sample(rng, feats, per_subject)
    ]

    descriptor_id: DescriptorId = entries[0].feature.descriptor_id
    logger.info(
        "Enrolled %d %s templates for %d subjects",
        len(entries),
        descriptor_id.value,
        len(grouped),
    )
    return Gallery(descriptor_id=descriptor_id, entries=tuple(entries))


def sample_probes(
    features: Iterable[LabeledFeature],
    per_subject: int = DEFAULT_PROBES_PER_SUBJECT,
    seed: int = DEFAULT_PROBE_SEED,
    exclude: Gallery | None = None,
) -> ProbeSet:
    """
    Sample up to ``per_subject`` probes for every subject, never reusing an
    enrolled (subject, image, condition) triple. Subjects whose pool is
    smaller than ``per_subject`` contribute their whole pool and the
    shortfall is recorded.

    :raise ProtocolError: If the pool of any subject is empty
    """
    if per_subject < 1:
        raise ArgumentError(f"per_subject must be >= 1, got {per_subject}")

    excluded = exclude.keys if exclude is not None else frozenset()
    grouped = group_by_subject(features)
    if not grouped:
        raise ProtocolError("Cannot sample probes from an empty feature set")

    pools = {
        s: [f for f in feats if f.key not in excluded] for s, feats in grouped.items()
    }
    empty = [s for s, pool in pools.items() if not pool]
    if empty:
        raise ProtocolError("No probe images left for subjects", subjects=empty)

    rng = np.random.default_rng(seed)
    probes: list[LabeledFeature] = []
    shortfalls: dict[str, int] = {}
    for subject, pool in pools.items():
        probes.extend(_sample(rng, pool, per_subject))
        if len(pool) < per_subject:
            shortfalls[subject] = per_subject - len(pool)

    if shortfalls:
        logger.warning(
            "Probe pool smaller than %d for %d subjects; using all available images",
            per_subject,
            len(shortfalls),
        )

    logger.info("Sampled %d probes for %d subjects", len(probes), len(pools))
    return ProbeSet(probes=tuple(probes), shortfalls=shortfalls)
