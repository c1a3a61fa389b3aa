from .descriptors import DescriptorParams, extract
from .identification import Gallery, compute_cmc, cross_condition_eval, identify
from .imaging import GrayImage, load_image, preprocess
from .matching import cosine_similarity, euclidean_distance
from ._exceptions import (
    ArgumentError,
    DegenerateVectorError,
    DimensionError,
    FaceIdException,
    FormatError,
    ProtocolError,
)
from ._model import (
    Condition,
    DescriptorId,
    FeatureVector,
    LabeledFeature,
    MatchScore,
    Metric,
    ModelInfo,
    Polarity,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "Condition",
    "DegenerateVectorError",
    "DescriptorId",
    "DescriptorParams",
    "DimensionError",
    "FaceIdException",
    "FeatureVector",
    "FormatError",
    "Gallery",
    "GrayImage",
    "LabeledFeature",
    "MatchScore",
    "Metric",
    "ModelInfo",
    "Polarity",
    "ProtocolError",
    "compute_cmc",
    "cosine_similarity",
    "cross_condition_eval",
    "euclidean_distance",
    "extract",
    "identify",
    "load_image",
    "preprocess",
]
