import math

import numpy as np
import pytest

from faceid import (
    ArgumentError,
    Condition,
    DescriptorId,
    DimensionError,
    FeatureVector,
    LabeledFeature,
    Metric,
    ProtocolError,
)
from faceid.descriptors import EXTRACTORS, extract
from faceid.identification import (
    CMCCurve,
    Gallery,
    ProtocolConfig,
    compute_cmc,
    condition_pair_label,
    cross_condition_eval,
    enroll_gallery,
    evaluate_condition_pairs,
    evaluate_sets,
    identify,
    sample_probes,
    score_matrix,
    true_rank,
)
from faceid.synthetic import generate_dataset


def _feature(
    subject: str,
    image: str,
    values,
    condition: Condition = Condition.OFFICE,
    descriptor: DescriptorId = DescriptorId.EMBEDDING,
) -> LabeledFeature:
    return LabeledFeature(subject, image, condition, FeatureVector(descriptor, values))


def _dataset(
    n_subjects: int,
    n_images: int,
    *,
    conditions=(Condition.OFFICE,),
    seed: int = 0,
    spread: float = 0.01,
) -> list[LabeledFeature]:
    # Subject centroids far apart, images scattered tightly around them
    rng = np.random.default_rng(seed)
    centroids = 10 * rng.normal(size=(n_subjects, 8))
    return [
        _feature(
            f"s{s:02d}",
            f"i{i:03d}",
            centroids[s] + spread * rng.normal(size=8),
            condition,
        )
        for condition in conditions
        for s in range(n_subjects)
        for i in range(n_images)
    ]


def _ranked_fixture():
    gallery = Gallery(
        DescriptorId.EMBEDDING,
        (
            _feature("A", "g", [0, 0]),
            _feature("B", "g", [10, 0]),
            _feature("C", "g", [0, 10]),
            _feature("D", "g", [20, 20]),
        ),
    )
    # True subjects rank 1, 2 and 4 under the Euclidean distance
    probes = [
        _feature("A", "p", [0, 0]),
        _feature("B", "p", [1, 0]),
        _feature("C", "p", [20, 3]),
    ]
    return gallery, probes


def test_enroll_gallery_takes_whole_population():
    features = _dataset(3, 12)
    gallery = enroll_gallery(features, 12, seed=1)
    assert len(gallery) == 36
    assert set(gallery.entries) == set(features)
    assert gallery.subjects == ["s00", "s01", "s02"]


def test_enroll_gallery_is_seeded():
    features = _dataset(3, 20)
    a = enroll_gallery(features, 12, seed=42)
    b = enroll_gallery(list(reversed(features)), 12, seed=42)
    assert a.entries == b.entries
    assert all(len(t) == 12 for t in a.templates.values())


def test_enroll_gallery_names_short_subjects():
    features = _dataset(2, 12) + [
        _feature("zz", f"i{i}", np.zeros(8)) for i in range(5)
    ]
    with pytest.raises(ProtocolError) as exc:
        enroll_gallery(features, 12)
    assert exc.value.subjects == ["zz"]


def test_enroll_gallery_rejects_duplicates_and_mixed_dimensions():
    with pytest.raises(ArgumentError):
        enroll_gallery([_feature("a", "1", [1.0]), _feature("a", "1", [2.0])], 1)
    with pytest.raises(ArgumentError):
        enroll_gallery(
            [_feature("a", "1", [1.0]), _feature("b", "1", [1.0, 2.0])], 1
        )


def test_sample_probes_caps_and_records_shortfall():
    features = _dataset(1, 150) + [
        _feature("small", f"i{i:03d}", np.ones(8)) for i in range(40)
    ]
    probes = sample_probes(features, 100, seed=43)
    counts = {}
    for p in probes:
        counts[p.subject_id] = counts.get(p.subject_id, 0) + 1

    assert counts == {"s00": 100, "small": 40}
    assert probes.shortfalls == {"small": 60}


def test_sample_probes_is_seeded_and_excludes_gallery():
    features = _dataset(3, 20)
    gallery = enroll_gallery(features, 12, seed=42)
    a = sample_probes(features, 100, seed=43, exclude=gallery)
    b = sample_probes(features, 100, seed=43, exclude=gallery)

    assert list(a) == list(b)
    assert len(a) == 3 * 8
    assert not {p.key for p in a} & gallery.keys


def test_sample_probes_rejects_exhausted_pools():
    features = _dataset(2, 3)
    gallery = enroll_gallery(features, 3)
    with pytest.raises(ProtocolError):
        sample_probes(features, 10, exclude=gallery)


def test_identify_ranks_identical_template_first():
    gallery = Gallery(
        DescriptorId.EMBEDDING,
        (_feature("a", "g", [1, 0]), _feature("b", "g", [0, 1])),
    )
    probe = FeatureVector(DescriptorId.EMBEDDING, [0, 1])
    ranked = identify(probe, gallery, Metric.COSINE)
    assert [s for s, _ in ranked] == ["b", "a"]
    assert ranked[0][1].value == pytest.approx(1.0)
    assert len(ranked) == 2


def test_identify_breaks_ties_by_subject_id():
    y_tie = math.sqrt(1 - 0.9**2)
    gallery = Gallery(
        DescriptorId.EMBEDDING,
        (
            _feature("C", "g", [0.1, math.sqrt(0.99)]),
            _feature("B", "g", [0.9, -y_tie]),
            _feature("A", "g", [0.9, y_tie]),
        ),
    )
    probe = FeatureVector(DescriptorId.EMBEDDING, [1, 0])
    ranked = identify(probe, gallery, Metric.COSINE)
    assert [s for s, _ in ranked] == ["A", "B", "C"]
    assert ranked[0][1].value == ranked[1][1].value


def test_identify_fuses_templates_by_mean():
    gallery = Gallery(
        DescriptorId.EMBEDDING,
        (
            _feature("a", "1", [0, 0]),
            _feature("a", "2", [4, 0]),
            _feature("b", "1", [3, 0]),
        ),
    )
    probe = FeatureVector(DescriptorId.EMBEDDING, [1, 0])
    ranked = identify(probe, gallery, Metric.EUCLIDEAN)
    # a: mean(1, 3) ties with b: 2
    assert [(s, score.value) for s, score in ranked] == [("a", 2.0), ("b", 2.0)]


def test_identify_rejects_dimension_mismatch():
    gallery, _ = _ranked_fixture()
    with pytest.raises(DimensionError):
        identify(
            FeatureVector(DescriptorId.EMBEDDING, [1, 2, 3]), gallery, Metric.COSINE
        )


def test_compute_cmc_matches_hand_computed_ranks():
    gallery, probes = _ranked_fixture()
    assert [true_rank(p, gallery, Metric.EUCLIDEAN) for p in probes] == [1, 2, 4]

    cmc = compute_cmc(probes, gallery, Metric.EUCLIDEAN, max_rank=5)
    assert cmc.accuracy == pytest.approx((1 / 3, 2 / 3, 2 / 3, 1.0, 1.0))
    assert cmc.n_probes == 3


def test_score_matrix_has_one_column_per_subject():
    gallery, probes = _ranked_fixture()
    matrix = score_matrix(probes, gallery, Metric.EUCLIDEAN)
    assert matrix.shape == (3, 4)
    assert matrix[1, 0] == 1.0


def test_compute_cmc_on_self_match_is_perfect():
    features = _dataset(5, 1)
    gallery = enroll_gallery(features, 1)
    for metric in Metric:
        assert compute_cmc(features, gallery, metric).rank(1) == 1.0


def test_compute_cmc_does_not_depend_on_jobs():
    features = _dataset(6, 10, spread=8.0, seed=3)
    gallery = enroll_gallery(features, 4)
    probes = sample_probes(features, 6, exclude=gallery)
    serial = compute_cmc(probes, gallery, Metric.EUCLIDEAN, jobs=1)
    parallel = compute_cmc(probes, gallery, Metric.EUCLIDEAN, jobs=4)
    assert serial == parallel
    assert all(a <= b for a, b in zip(serial.accuracy, serial.accuracy[1:]))


def test_compute_cmc_reaches_one_when_max_rank_covers_the_gallery():
    features = _dataset(4, 6, spread=50.0, seed=5)
    gallery = enroll_gallery(features, 2)
    probes = sample_probes(features, 4, exclude=gallery)
    cmc = compute_cmc(probes, gallery, Metric.COSINE, max_rank=6)
    assert cmc.rank(4) == 1.0
    assert cmc.rank(6) == 1.0


def test_compute_cmc_is_closed_set():
    gallery, probes = _ranked_fixture()
    stranger = _feature("Z", "p", [1, 1])
    with pytest.raises(ProtocolError) as exc:
        compute_cmc(probes + [stranger], gallery, Metric.EUCLIDEAN)
    assert exc.value.subjects == ["Z"]
    with pytest.raises(ArgumentError):
        compute_cmc([], gallery, Metric.EUCLIDEAN)


def test_cmc_curve_validation():
    with pytest.raises(ArgumentError):
        CMCCurve(max_rank=2, accuracy=(0.5, 0.4), n_probes=2)
    with pytest.raises(ArgumentError):
        CMCCurve(max_rank=3, accuracy=(0.5, 0.6), n_probes=2)
    with pytest.raises(ArgumentError):
        CMCCurve(max_rank=1, accuracy=(1.0,), n_probes=1).rank(2)


@pytest.mark.parametrize("descriptor", list(EXTRACTORS))
@pytest.mark.parametrize("metric", list(Metric))
def test_self_match_is_perfect_for_every_descriptor(descriptor, metric):
    samples = generate_dataset(4, 1, conditions=(Condition.OFFICE,), size=64, seed=9)
    features = [
        LabeledFeature(
            s.subject_id, s.image_id, s.condition, extract(descriptor, s.image)
        )
        for s in samples
    ]
    config = ProtocolConfig(gallery_per_subject=1, metric=metric, exclude_gallery=False)
    result = evaluate_sets(features, features, config)
    assert result.rank_percent(1) == 100.0


def test_evaluate_sets_reports_provenance():
    features = _dataset(3, 20)
    config = ProtocolConfig(gallery_per_subject=12, probes_per_subject=10)
    result = evaluate_sets(features, features, config)
    row = result.to_dict()

    assert row["label"] == "Office vs. Office"
    assert row["metric"] == "cosine"
    assert row["rank_1"] == 100.0
    assert row["n_gallery"] == 36
    assert row["n_probes"] == 24
    assert row["probe_shortfall"] == 6
    assert (row["gallery_seed"], row["probe_seed"]) == (42, 43)
    assert len(row["cmc"]) == 10


def test_evaluation_result_rank_percent_rounds_to_two_decimals():
    gallery, probes = _ranked_fixture()
    config = ProtocolConfig(gallery_per_subject=1, metric=Metric.EUCLIDEAN)
    result = evaluate_sets(list(gallery.entries), probes, config)
    assert result.rank_percent(1) == 33.33
    assert result.rank_percent(5) == 100.0


def test_condition_pair_label_puts_gallery_first():
    assert condition_pair_label([Condition.OFFICE], [Condition.DAY]) == "Office vs. Day"


def test_cross_condition_eval_with_identical_conditions_is_symmetric():
    office = _dataset(4, 10, spread=6.0, seed=11)
    day = [
        LabeledFeature(f.subject_id, f.image_id, Condition.DAY, f.feature)
        for f in office
    ]
    dataset = office + day
    config = ProtocolConfig(gallery_per_subject=4, probes_per_subject=5)

    assert cross_condition_eval(
        Condition.OFFICE, Condition.OFFICE, dataset, config
    ) == cross_condition_eval(Condition.DAY, Condition.DAY, dataset, config)
    assert cross_condition_eval(
        Condition.OFFICE, Condition.DAY, dataset, config
    ) == cross_condition_eval(Condition.DAY, Condition.OFFICE, dataset, config)


def test_cross_condition_eval_on_separated_subjects_is_perfect():
    dataset = _dataset(4, 10, conditions=(Condition.OFFICE, Condition.DAY))
    config = ProtocolConfig(gallery_per_subject=4, probes_per_subject=5)
    cmc = cross_condition_eval(Condition.OFFICE, Condition.DAY, dataset, config)
    assert cmc.accuracy == (1.0,) * 10


def test_cross_condition_eval_requires_both_conditions():
    dataset = _dataset(2, 5, conditions=(Condition.OFFICE, Condition.DAY))
    dataset = [
        f
        for f in dataset
        if not (f.subject_id == "s01" and f.condition == Condition.DAY)
    ]
    with pytest.raises(ProtocolError) as exc:
        cross_condition_eval(Condition.OFFICE, Condition.DAY, dataset)
    assert exc.value.subjects == ["s01"]


def test_evaluate_condition_pairs_order_and_labels():
    dataset = _dataset(3, 6, conditions=(Condition.OFFICE, Condition.DAY))
    config = ProtocolConfig(gallery_per_subject=2, probes_per_subject=3)
    results = evaluate_condition_pairs(dataset, config)
    assert [r.label for r in results] == [
        "Office vs. Office",
        "Day vs. Day",
        "Office vs. Day",
        "Day vs. Office",
    ]
    for r in results:
        assert r.rank_percent(1) <= r.rank_percent(5) <= r.rank_percent(10)


def test_protocol_config_validation():
    with pytest.raises(ArgumentError):
        ProtocolConfig(gallery_per_subject=0)
    with pytest.raises(ArgumentError):
        ProtocolConfig(jobs=0)


def test_identify_does_not_depend_on_template_order():
    features = _dataset(5, 4, spread=6.0, seed=11)
    forward = Gallery(DescriptorId.EMBEDDING, tuple(features))
    backward = Gallery(DescriptorId.EMBEDDING, tuple(reversed(features)))
    probe = _feature("s02", "p", np.random.default_rng(12).normal(size=8) * 10)
    for metric in Metric:
        a = identify(probe.feature, forward, metric)
        b = identify(probe.feature, backward, metric)
        assert [s for s, _ in a] == [s for s, _ in b]
        assert [m.value for _, m in a] == pytest.approx([m.value for _, m in b])


def test_compute_cmc_breaks_ties_by_subject_id():
    gallery = Gallery(
        DescriptorId.EMBEDDING,
        (
            _feature("A", "g", [1, 0]),
            _feature("B", "g", [-1, 0]),
            _feature("C", "g", [0, 5]),
        ),
    )
    # Equidistant from A and B: A ranks first, B second
    probes = [_feature("A", "p", [0, 0]), _feature("B", "p", [0, 0])]
    assert [true_rank(p, gallery, Metric.EUCLIDEAN) for p in probes] == [1, 2]
    cmc = compute_cmc(probes, gallery, Metric.EUCLIDEAN, max_rank=3)
    assert cmc.accuracy == pytest.approx((0.5, 1.0, 1.0))


@pytest.mark.parametrize("metric", list(Metric))
def test_compute_cmc_agrees_with_identify(metric):
    features = _dataset(6, 8, spread=9.0, seed=13)
    gallery = enroll_gallery(features, 3)
    probes = sample_probes(features, 5, exclude=gallery)
    ranks = [true_rank(p, gallery, metric) for p in probes]
    cmc = compute_cmc(probes, gallery, metric, max_rank=6)
    expected = [sum(r <= k for r in ranks) / len(probes) for k in range(1, 7)]
    assert cmc.accuracy == pytest.approx(tuple(expected))


def test_score_matrix_does_not_depend_on_jobs():
    features = _dataset(4, 6, spread=3.0, seed=17)
    gallery = enroll_gallery(features, 2)
    serial = score_matrix(features, gallery, Metric.COSINE, jobs=1)
    parallel = score_matrix(features, gallery, Metric.COSINE, jobs=3)
    assert np.array_equal(serial, parallel)
