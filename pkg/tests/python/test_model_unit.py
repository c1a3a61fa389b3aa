import numpy as np
import pytest

from faceid import (
    ArgumentError,
    Condition,
    DescriptorId,
    DimensionError,
    FeatureVector,
    FormatError,
    LabeledFeature,
    Metric,
    ModelInfo,
    Polarity,
    ProtocolError,
)


@pytest.mark.parametrize(
    ("raw", "expected"),
    [
        ("lbp", DescriptorId.LBP),
        ("MLBP", DescriptorId.MLBP),
        (" phog ", DescriptorId.PHOG),
        (DescriptorId.LTP, DescriptorId.LTP),
        ("embedding", DescriptorId.EMBEDDING),
    ],
)
def test_descriptor_id_from_raw(raw, expected):
    assert DescriptorId.from_raw(raw) == expected


def test_descriptor_id_from_raw_lists_the_six_descriptors():
    with pytest.raises(ArgumentError) as exc:
        DescriptorId.from_raw("LBQ")
    assert "LBP, mLBP, HOG, PHOG, LPQ, LTP" in exc.value.message


@pytest.mark.parametrize(
    ("raw", "expected"),
    [
        ("office", Condition.OFFICE),
        ("Indoor", Condition.OFFICE),
        ("daylight", Condition.DAY),
        ("DAY", Condition.DAY),
    ],
)
def test_condition_from_raw(raw, expected):
    assert Condition.from_raw(raw) == expected


def test_condition_from_raw_rejects_unknown_values():
    with pytest.raises(ArgumentError):
        Condition.from_raw("night")


def test_metric_defaults_follow_the_descriptor():
    assert Metric.default_for(DescriptorId.EMBEDDING) == Metric.COSINE
    for descriptor in DescriptorId.handcrafted():
        assert Metric.default_for(descriptor) == Metric.EUCLIDEAN
    assert Metric.COSINE.polarity == Polarity.SIMILARITY
    assert Metric.EUCLIDEAN.polarity == Polarity.DISTANCE
    with pytest.raises(ArgumentError):
        Metric.from_raw("manhattan")


def test_feature_vector_is_immutable_and_comparable():
    a = FeatureVector(DescriptorId.EMBEDDING, [1, 2, 3])
    b = FeatureVector(DescriptorId.EMBEDDING, np.array([1.0, 2.0, 3.0]))
    assert a == b
    assert hash(a) == hash(b)
    assert a.dim == 3
    assert a != FeatureVector(DescriptorId.LBP, [1, 2, 3])
    with pytest.raises(ValueError):
        a.values[0] = 5


@pytest.mark.parametrize(
    ("descriptor", "values", "error"),
    [
        (DescriptorId.EMBEDDING, [], DimensionError),
        (DescriptorId.EMBEDDING, [[1, 2]], DimensionError),
        (DescriptorId.EMBEDDING, [1, float("nan")], ArgumentError),
        (DescriptorId.LBP, [0.5, -0.5], ArgumentError),
    ],
)
def test_feature_vector_validation(descriptor, values, error):
    with pytest.raises(error):
        FeatureVector(descriptor, values)


def test_embeddings_may_be_negative():
    assert FeatureVector(DescriptorId.EMBEDDING, [-1.0, 2.0]).dim == 2


def test_labeled_feature_requires_identifiers():
    feature = FeatureVector(DescriptorId.EMBEDDING, [1.0])
    with pytest.raises(ArgumentError):
        LabeledFeature("", "img", Condition.OFFICE, feature)
    labeled = LabeledFeature("s1", "img", Condition.DAY, feature)
    assert labeled.key == ("s1", "img", Condition.DAY)


def test_model_info_requires_positive_parameter_count():
    with pytest.raises(ArgumentError):
        ModelInfo("Empty", 0)


def test_protocol_error_names_sorted_subjects():
    err = ProtocolError("Not enough images for subjects", subjects={"b", "a"})
    assert err.subjects == ["a", "b"]
    assert err.message == "Not enough images for subjects: a, b"


def test_format_error_carries_location():
    err = FormatError("bad value", path="features.csv", line=3)
    assert err.message == "features.csv:3: bad value"
    assert isinstance(err, ValueError)
