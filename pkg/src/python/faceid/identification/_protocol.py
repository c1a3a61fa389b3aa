import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .._exceptions import ArgumentError, ProtocolError
from .._model import Condition, LabeledFeature, Metric
from ._gallery import (
    DEFAULT_GALLERY_PER_SUBJECT,
    DEFAULT_GALLERY_SEED,
    DEFAULT_PROBE_SEED,
    DEFAULT_PROBES_PER_SUBJECT,
    enroll_gallery,
    sample_probes,
)
from ._model import CMCCurve
from ._ranking import DEFAULT_MAX_RANK, compute_cmc

logger = logging.getLogger(__name__)

REPORTED_RANKS = (1, 5, 10)
EVALUATION_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ProtocolConfig:
    """
    Gallery/probe protocol settings.

    :param metric: Matching metric. If not set, cosine similarity is used for
        embeddings and Euclidean distance for handcrafted descriptors.
    :param exclude_gallery: Whether probes may not reuse enrolled images.
        Disable it only for self-match evaluations.
    """

    gallery_per_subject: int = DEFAULT_GALLERY_PER_SUBJECT
    probes_per_subject: int = DEFAULT_PROBES_PER_SUBJECT
    gallery_seed: int = DEFAULT_GALLERY_SEED
    probe_seed: int = DEFAULT_PROBE_SEED
    max_rank: int = DEFAULT_MAX_RANK
    metric: Metric | None = None
    jobs: int = 1
    exclude_gallery: bool = True

    def __post_init__(self):
        for name in ("gallery_per_subject", "probes_per_subject", "max_rank", "jobs"):
            if getattr(self, name) < 1:
                raise ArgumentError(f"{name} must be >= 1, got {getattr(self, name)}")


@dataclass(frozen=True)
class EvaluationResult:
    """
    Outcome of one gallery/probe evaluation, with the provenance needed to
    reproduce it.
    """

    label: str
    descriptor: str
    metric: Metric
    cmc: CMCCurve
    n_gallery: int
    n_subjects: int
    n_probes: int
    gallery_seed: int
    probe_seed: int
    probe_shortfalls: dict[str, int] = field(default_factory=dict)

    def rank_percent(self, k: int) -> float:
        """
        Rank-k accuracy as a percentage rounded to 2 decimals. Ranks beyond
        the curve are reported at the final accuracy.
        """
        return round(100.0 * self.cmc.rank(min(k, self.cmc.max_rank)), 2)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "descriptor": self.descriptor,
            "metric": self.metric.value,
            **{f"rank_{k}": self.rank_percent(k) for k in REPORTED_RANKS},
            "cmc": list(self.cmc.accuracy),
            "n_probes": self.n_probes,
            "n_gallery": self.n_gallery,
            "n_subjects": self.n_subjects,
            "gallery_seed": self.gallery_seed,
            "probe_seed": self.probe_seed,
            "probe_shortfall": sum(self.probe_shortfalls.values()),
        }


def condition_pair_label(
    gallery: Iterable[Condition], probe: Iterable[Condition]
) -> str:
    def _label(conditions: Iterable[Condition]) -> str:
        return "+".join(c.label for c in sorted(set(conditions), key=lambda c: c.value))

    return f"{_label(gallery)} vs. {_label(probe)}"


def evaluate_sets(
    gallery_features: Sequence[LabeledFeature],
    probe_features: Sequence[LabeledFeature],
    config: ProtocolConfig,
    *,
    label: str | None = None,
) -> EvaluationResult:
    """
    Enroll a gallery from one feature set, sample probes from another (or
    the same) set and compute the CMC curve.
    """
    if not gallery_features or not probe_features:
        raise ProtocolError("Gallery and probe feature sets must not be empty")

    gallery = enroll_gallery(
        gallery_features, config.gallery_per_subject, config.gallery_seed
    )
    probes = sample_probes(
        probe_features,
        config.probes_per_subject,
        config.probe_seed,
        exclude=gallery if config.exclude_gallery else None,
    )
    metric = config.metric or Metric.default_for(gallery.descriptor_id)
    cmc = compute_cmc(probes, gallery, metric, config.max_rank, jobs=config.jobs)
    label = label or condition_pair_label(
        (f.condition for f in gallery.entries), (p.condition for p in probes)
    )

    return EvaluationResult(
        label=label,
        descriptor=gallery.descriptor_id.value,
        metric=metric,
        cmc=cmc,
        n_gallery=len(gallery),
        n_subjects=len(gallery.subjects),
        n_probes=len(probes),
        gallery_seed=config.gallery_seed,
        probe_seed=config.probe_seed,
        probe_shortfalls=dict(probes.shortfalls),
    )


def _evaluate_conditions(
    gallery_condition: Condition,
    probe_condition: Condition,
    dataset: Sequence[LabeledFeature],
    config: ProtocolConfig,
) -> EvaluationResult:
    by_condition: dict[Condition, list[LabeledFeature]] = {}
    for feat in dataset:
        by_condition.setdefault(feat.condition, []).append(feat)

    subjects = {f.subject_id for f in dataset}
    missing = set()
    for condition in (gallery_condition, probe_condition):
        present = {f.subject_id for f in by_condition.get(condition, [])}
        missing |= subjects - present
    if missing or not subjects:
        raise ProtocolError(
            f"Missing {gallery_condition.value}/{probe_condition.value} images "
            "for subjects",
            subjects=missing,
        )

    logger.info(
        "Evaluating %s gallery against %s probes",
        gallery_condition.value,
        probe_condition.value,
    )
    return evaluate_sets(
        by_condition[gallery_condition],
        by_condition[probe_condition],
        config,
        label=f"{gallery_condition.label} vs. {probe_condition.label}",
    )


def cross_condition_eval(
    gallery_condition: Condition,
    probe_condition: Condition,
    dataset: Sequence[LabeledFeature],
    config: ProtocolConfig | None = None,
) -> CMCCurve:
    """
    Enroll the gallery from one acquisition condition and draw the probes
    from another, with independent seeded draws.

    :raise ProtocolError: If a subject lacks images in either condition
    """
    return _evaluate_conditions(
        gallery_condition, probe_condition, dataset, config or ProtocolConfig()
    ).cmc


def evaluate_condition_pairs(
    dataset: Sequence[LabeledFeature],
    config: ProtocolConfig | None = None,
    conditions: Sequence[Condition] = (Condition.OFFICE, Condition.DAY),
) -> list[EvaluationResult]:
    """
    Evaluate every pairing of the given conditions: same-condition pairs
    first, then the cross-condition ones.
    """
    config = config or ProtocolConfig()
    pairs = [(c, c) for c in conditions] + [
        (g, p) for g in conditions for p in conditions if g != p
    ]
    return [_evaluate_conditions(g, p, dataset, config) for g, p in pairs]
