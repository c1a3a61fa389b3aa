from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .._exceptions import ArgumentError
from .._model import Condition, DescriptorId, FeatureVector, LabeledFeature


@dataclass(frozen=True)
class Gallery:
    """
    Enrolled templates, grouped by subject.

    :param descriptor_id: The descriptor shared by every template
    :param entries: The enrolled labeled features, sorted by key
    """

    descriptor_id: DescriptorId
    entries: tuple[LabeledFeature, ...]

    def __post_init__(self):
        if not self.entries:
            raise ArgumentError("A gallery needs at least one template")

        dims = {e.feature.dim for e in self.entries}
        ids = {e.feature.descriptor_id for e in self.entries}
        if len(dims) != 1 or ids != {self.descriptor_id}:
            raise ArgumentError(
                "Gallery templates must share descriptor and dimension, got "
                f"descriptors {sorted(i.value for i in ids)} and dims {sorted(dims)}"
            )

    @cached_property
    def templates(self) -> dict[str, tuple[FeatureVector, ...]]:
        grouped: dict[str, list[FeatureVector]] = {}
        for entry in self.entries:
            grouped.setdefault(entry.subject_id, []).append(entry.feature)
        return {s: tuple(grouped[s]) for s in sorted(grouped)}

    @property
    def subjects(self) -> list[str]:
        return list(self.templates)

    @property
    def dim(self) -> int:
        return self.entries[0].feature.dim

    @cached_property
    def keys(self) -> frozenset[tuple[str, str, Condition]]:
        return frozenset(e.key for e in self.entries)

    @cached_property
    def matrix(self) -> np.ndarray:
        """
        Template vectors stacked subject by subject, in :attr:`subjects`
        order.
        """
        return np.vstack(
            [f.values for feats in self.templates.values() for f in feats]
        )

    @cached_property
    def subject_slices(self) -> list[slice]:
        slices, start = [], 0
        for feats in self.templates.values():
            slices.append(slice(start, start + len(feats)))
            start += len(feats)
        return slices

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ProbeSet(Sequence):
    """
    Sampled probes, plus the per-subject shortfall for subjects whose pool
    was smaller than requested.
    """

    probes: tuple[LabeledFeature, ...]
    shortfalls: dict[str, int] = field(default_factory=dict)

    def __getitem__(self, idx):
        return self.probes[idx]

    def __len__(self) -> int:
        return len(self.probes)


@dataclass(frozen=True)
class CMCCurve:
    """
    Cumulative match characteristic: ``accuracy[k - 1]`` is the rank-k
    identification rate.
    """

    max_rank: int
    accuracy: tuple[float, ...]
    n_probes: int

    def __post_init__(self):
        if len(self.accuracy) != self.max_rank:
            raise ArgumentError(
                f"Expected {self.max_rank} accuracy values, got {len(self.accuracy)}"
            )
        if any(a < 0 or a > 1 for a in self.accuracy):
            raise ArgumentError("CMC accuracies must lie within [0, 1]")
        if any(b < a for a, b in zip(self.accuracy, self.accuracy[1:])):
            raise ArgumentError("CMC accuracies must be nondecreasing")

    def rank(self, k: int) -> float:
        """
        Rank-k accuracy. Ranks beyond ``max_rank`` are not available.
        """
        if k < 1 or k > self.max_rank:
            raise ArgumentError(f"Rank {k} outside 1..{self.max_rank}")
        return self.accuracy[k - 1]

    def to_dict(self) -> dict:
        return {
            "max_rank": self.max_rank,
            "accuracy": list(self.accuracy),
            "n_probes": self.n_probes,
        }
