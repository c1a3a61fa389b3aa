from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._exceptions import ArgumentError, DimensionError


class DescriptorId(str, Enum):
    """
    Identifiers of the supported feature types: the six handcrafted
    descriptors plus precomputed deep embeddings.
    """

    LBP = "LBP"
    MLBP = "mLBP"
    LTP = "LTP"
    LPQ = "LPQ"
    HOG = "HOG"
    PHOG = "PHOG"
    EMBEDDING = "EMBEDDING"

    @classmethod
    def from_raw(cls, raw: "str | DescriptorId") -> "DescriptorId":
        if isinstance(raw, cls):
            return raw

        normalized = str(raw).strip().lower()
        for value in cls:
            if value.value.lower() == normalized:
                return value

        raise ArgumentError(
            f"Unknown descriptor: {raw}. Valid descriptors: "
            + ", ".join(d.value for d in cls.handcrafted())
        )

    @classmethod
    def handcrafted(cls) -> tuple["DescriptorId", ...]:
        return (cls.LBP, cls.MLBP, cls.HOG, cls.PHOG, cls.LPQ, cls.LTP)

    @property
    def is_histogram(self) -> bool:
        """
        True for the code-histogram family, whose values are non-negative
        and sum to one per block.
        """
        return self in (
            DescriptorId.LBP,
            DescriptorId.MLBP,
            DescriptorId.LTP,
            DescriptorId.LPQ,
        )


class Condition(str, Enum):
    """
    Acquisition (lighting) condition of an image.
    """

    OFFICE = "office"
    DAY = "day"
    OTHER = "other"

    @classmethod
    def from_raw(cls, raw: "str | Condition") -> "Condition":
        if isinstance(raw, cls):
            return raw

        normalized = str(raw).strip().lower()
        aliases = {
            "office": cls.OFFICE,
            "indoor": cls.OFFICE,
            "day": cls.DAY,
            "daylight": cls.DAY,
            "outdoor": cls.DAY,
            "other": cls.OTHER,
        }

        if normalized not in aliases:
            raise ArgumentError(f"Unknown condition: {raw}")
        return aliases[normalized]

    @property
    def label(self) -> str:
        return self.value.capitalize()


class Polarity(str, Enum):
    """
    Whether higher (similarity) or lower (distance) scores are better.
    """

    SIMILARITY = "similarity"
    DISTANCE = "distance"


class Metric(str, Enum):
    """
    Matching metrics.
    """

    COSINE = "cosine"
    EUCLIDEAN = "euclidean"

    @classmethod
    def from_raw(cls, raw: "str | Metric") -> "Metric":
        if isinstance(raw, cls):
            return raw
        try:
            return cls(str(raw).strip().lower())
        except ValueError as e:
            raise ArgumentError(f"Unknown metric: {raw}") from e

    @classmethod
    def default_for(cls, descriptor_id: DescriptorId) -> "Metric":
        """
        Cosine similarity for deep embeddings, Euclidean distance for the
        handcrafted descriptors.
        """
        if descriptor_id == DescriptorId.EMBEDDING:
            return cls.COSINE
        return cls.EUCLIDEAN

    @property
    def polarity(self) -> Polarity:
        if self == Metric.COSINE:
            return Polarity.SIMILARITY
        return Polarity.DISTANCE


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """
    A descriptor or embedding vector.

    The values are stored as a read-only float64 array.
    """

    descriptor_id: DescriptorId
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size == 0:
            raise DimensionError(
                f"{self.descriptor_id.value} vector must be a non-empty 1-D array, "
                f"got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ArgumentError(
                f"{self.descriptor_id.value} vector contains non-finite values"
            )
        if self.descriptor_id.is_histogram and np.any(values < 0):
            raise ArgumentError(
                f"{self.descriptor_id.value} histogram contains negative values"
            )

        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return self.descriptor_id == other.descriptor_id and np.array_equal(
            self.values, other.values
        )

    def __hash__(self):
        return hash((self.descriptor_id, self.values.tobytes()))


@dataclass(frozen=True)
class LabeledFeature:
    """
    A feature vector tagged with its subject, image and acquisition
    condition.
    """

    subject_id: str
    image_id: str
    condition: Condition
    feature: FeatureVector

    def __post_init__(self):
        if not self.subject_id:
            raise ArgumentError("subject_id is required")
        if not self.image_id:
            raise ArgumentError("image_id is required")

    @property
    def key(self) -> tuple[str, str, Condition]:
        return (self.subject_id, self.image_id, self.condition)


@dataclass(frozen=True)
class MatchScore:
    """
    A matching score together with its polarity.
    """

    value: float
    polarity: Polarity

    def to_dict(self) -> dict:
        return {"value": self.value, "polarity": self.polarity.value}


@dataclass(frozen=True)
class ModelInfo:
    """
    Metadata of a deep model whose embeddings can be ingested.
    """

    name: str
    params_millions: float
    description: str = field(default="", compare=False)

    def __post_init__(self):
        if self.params_millions <= 0:
            raise ArgumentError(
                f"params_millions must be positive for model {self.name}"
            )
