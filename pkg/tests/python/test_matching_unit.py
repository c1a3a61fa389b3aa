import math

import numpy as np
import pytest

from faceid import (
    ArgumentError,
    DegenerateVectorError,
    DescriptorId,
    DimensionError,
    FeatureVector,
    MatchScore,
    Metric,
    Polarity,
)
from faceid.matching import (
    cosine_similarity,
    euclidean_distance,
    fuse_gallery_scores,
    match,
    template_scores,
)


def _vec(*values) -> FeatureVector:
    return FeatureVector(DescriptorId.EMBEDDING, list(values))


def _random_vec(rng: np.random.Generator, dim: int = 16) -> FeatureVector:
    return FeatureVector(DescriptorId.EMBEDDING, rng.normal(size=dim))


def test_cosine_similarity_examples():
    assert cosine_similarity(_vec(1, 0), _vec(0, 1)).value == 0.0
    assert cosine_similarity(_vec(1, 2, 3), _vec(4, 5, 6)).value == pytest.approx(
        32 / math.sqrt(14 * 77), abs=1e-6
    )
    assert cosine_similarity(_vec(1, 2), _vec(1, 2)).polarity == Polarity.SIMILARITY


def test_cosine_similarity_self_and_clamping():
    rng = np.random.default_rng(0)
    for _ in range(200):
        u = _random_vec(rng)
        v = _random_vec(rng)
        assert abs(cosine_similarity(u, u).value - 1.0) <= 1e-9
        assert -1.0 <= cosine_similarity(u, v).value <= 1.0


def test_cosine_similarity_is_scale_invariant():
    rng = np.random.default_rng(1)
    u, v = _random_vec(rng), _random_vec(rng)
    scaled_u = FeatureVector(DescriptorId.EMBEDDING, 3.5 * u.values)
    scaled_v = FeatureVector(DescriptorId.EMBEDDING, 0.01 * v.values)
    assert cosine_similarity(scaled_u, scaled_v).value == pytest.approx(
        cosine_similarity(u, v).value, abs=1e-9
    )


def test_cosine_similarity_rejects_zero_vectors():
    with pytest.raises(DegenerateVectorError):
        cosine_similarity(_vec(0, 0), _vec(1, 0))


def test_matching_rejects_dimension_mismatch():
    with pytest.raises(DimensionError):
        cosine_similarity(_vec(1, 0), _vec(1, 0, 0))
    with pytest.raises(DimensionError):
        euclidean_distance(_vec(1, 0), _vec(1, 0, 0))


def test_euclidean_distance_examples():
    assert euclidean_distance(_vec(0, 0), _vec(3, 4)).value == 5.0
    assert euclidean_distance(_vec(1, 2), _vec(1, 2)).value == 0.0
    assert euclidean_distance(_vec(0, 0), _vec(3, 4)).polarity == Polarity.DISTANCE


def test_euclidean_distance_is_a_metric_on_random_triples():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        u, v, w = (_random_vec(rng, 8) for _ in range(3))
        d_uv = euclidean_distance(u, v).value
        assert d_uv == euclidean_distance(v, u).value
        assert euclidean_distance(u, u).value == 0.0
        assert (
            euclidean_distance(u, w).value
            <= d_uv + euclidean_distance(v, w).value + 1e-9
        )


def test_match_dispatches_on_metric():
    u, v = _vec(1, 0), _vec(0, 1)
    assert match(u, v, Metric.COSINE) == cosine_similarity(u, v)
    assert match(u, v, Metric.EUCLIDEAN) == euclidean_distance(u, v)


@pytest.mark.parametrize(
    ("values", "expected"),
    [([0.8], 0.8), ([0.2, 0.4], 0.3), ([0.7] * 12, 0.7)],
)
def test_fuse_gallery_scores_is_the_mean(values, expected):
    scores = [MatchScore(v, Polarity.SIMILARITY) for v in values]
    fused = fuse_gallery_scores(scores)
    assert fused.value == pytest.approx(expected)
    assert fused.polarity == Polarity.SIMILARITY


def test_fuse_gallery_scores_is_order_independent():
    rng = np.random.default_rng(3)
    values = rng.normal(size=25)
    scores = [MatchScore(float(v), Polarity.DISTANCE) for v in values]
    assert (
        fuse_gallery_scores(scores).value
        == fuse_gallery_scores(list(reversed(scores))).value
    )


def test_fuse_gallery_scores_rejects_empty_and_mixed_lists():
    with pytest.raises(ArgumentError):
        fuse_gallery_scores([])
    with pytest.raises(ArgumentError):
        fuse_gallery_scores(
            [MatchScore(0.1, Polarity.SIMILARITY), MatchScore(0.1, Polarity.DISTANCE)]
        )


@pytest.mark.parametrize("metric", list(Metric))
def test_template_scores_agree_with_pairwise_matching(metric):
    rng = np.random.default_rng(4)
    probe = _random_vec(rng)
    templates = [_random_vec(rng) for _ in range(5)]
    scores = template_scores(
        probe.values, np.vstack([t.values for t in templates]), metric
    )
    expected = [match(probe, t, metric).value for t in templates]
    assert np.allclose(scores, expected, atol=1e-12)


def test_template_scores_reject_dimension_mismatch():
    with pytest.raises(DimensionError):
        template_scores(np.zeros(3), np.zeros((2, 4)), Metric.EUCLIDEAN)


def test_cosine_ranking_ignores_positive_scaling():
    rng = np.random.default_rng(41)
    probe = rng.normal(size=16)
    templates = rng.normal(size=(12, 16))
    scales = rng.uniform(0.01, 100.0, size=(12, 1))

    base = template_scores(probe, templates, Metric.COSINE)
    scaled = template_scores(3.5 * probe, scales * templates, Metric.COSINE)

    assert np.allclose(base, scaled)
    assert list(np.argsort(-base)) == list(np.argsort(-scaled))
