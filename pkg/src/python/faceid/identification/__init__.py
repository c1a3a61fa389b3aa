from ._gallery import (
    DEFAULT_GALLERY_PER_SUBJECT,
    DEFAULT_GALLERY_SEED,
    DEFAULT_PROBE_SEED,
    DEFAULT_PROBES_PER_SUBJECT,
    enroll_gallery,
    group_by_subject,
    sample_probes,
)
from ._model import CMCCurve, Gallery, ProbeSet
from ._protocol import (
    EVALUATION_SCHEMA_VERSION,
    REPORTED_RANKS,
    EvaluationResult,
    ProtocolConfig,
    condition_pair_label,
    cross_condition_eval,
    evaluate_condition_pairs,
    evaluate_sets,
)
from ._ranking import (
    DEFAULT_MAX_RANK,
    compute_cmc,
    fused_scores,
    identify,
    score_matrix,
    true_rank,
)

__all__ = [
    "CMCCurve",
    "DEFAULT_GALLERY_PER_SUBJECT",
    "DEFAULT_GALLERY_SEED",
    "DEFAULT_MAX_RANK",
    "DEFAULT_PROBE_SEED",
    "DEFAULT_PROBES_PER_SUBJECT",
    "EVALUATION_SCHEMA_VERSION",
    "EvaluationResult",
    "Gallery",
    "ProbeSet",
    "ProtocolConfig",
    "REPORTED_RANKS",
    "compute_cmc",
    "condition_pair_label",
    "cross_condition_eval",
    "enroll_gallery",
    "evaluate_condition_pairs",
    "evaluate_sets",
    "fused_scores",
    "group_by_subject",
    "identify",
    "sample_probes",
    "score_matrix",
    "true_rank",
]
