import logging
import time
from dataclasses import asdict, dataclass
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from .._exceptions import ArgumentError
from ..imaging import GrayImage

logger = logging.getLogger(__name__)

DEFAULT_WARMUP = 3
DEFAULT_REPETITIONS = 10

Clock = Callable[[], int]


@dataclass(frozen=True)
class TimingReport:
    """
    Per-sample extraction time statistics, in milliseconds, over every
    timed (image, repetition) pair.
    """

    extractor_name: str
    n_samples: int
    warmup_runs: int
    repetitions: int
    mean_ms: float
    median_ms: float
    std_ms: float
    min_ms: float
    max_ms: float

    def __post_init__(self):
        if self.n_samples < 1 or self.repetitions < 1:
            raise ArgumentError("A timing report needs at least one timed sample")
        if not self.min_ms <= self.median_ms <= self.max_ms:
            raise ArgumentError("Timing statistics are inconsistent")
        if self.min_ms < 0:
            raise ArgumentError("Timings cannot be negative")

    @classmethod
    def from_samples(
        cls,
        extractor_name: str,
        samples_ms: Sequence[float],
        *,
        warmup_runs: int,
        repetitions: int,
    ) -> "TimingReport":
        samples = np.asarray(samples_ms, dtype=np.float64)
        if samples.size == 0:
            raise ArgumentError("A timing report needs at least one timed sample")
        return cls(
            extractor_name=extractor_name,
            n_samples=int(samples.size),
            warmup_runs=warmup_runs,
            repetitions=repetitions,
            mean_ms=float(samples.mean()),
            median_ms=float(np.median(samples)),
            std_ms=float(samples.std()),
            min_ms=float(samples.min()),
            max_ms=float(samples.max()),
        )

    def to_dict(self) -> dict:
        return asdict(self)

    def to_row(self, params_millions: float | None = None, host: str = "") -> dict:
        """
        The report in the extraction-time table layout: model, parameter
        count, device and extraction time, followed by the statistics.
        """
        return {
            "model": self.extractor_name,
            "params_m": params_millions,
            "device": host,
            "extraction_time_ms": self.mean_ms,
            **{k: v for k, v in self.to_dict().items() if k != "extractor_name"},
        }


def _checksum(result: Any) -> float:
    values = getattr(result, "values", result)
    try:
        return float(np.sum(values))
    except (TypeError, ValueError):
        return float(hash(result) % 1_000_003)


def benchmark_extractor(
    extractor: Callable[[GrayImage], Any],
    corpus: Sequence[GrayImage],
    warmup: int = DEFAULT_WARMUP,
    repetitions: int = DEFAULT_REPETITIONS,
    *,
    name: str | None = None,
    clock: Clock = time.perf_counter_ns,
) -> TimingReport:
    """
    Measure the per-sample extraction time of an extractor over a corpus.

    ``warmup`` untimed passes over the corpus are followed by
    ``repetitions`` timed passes; every extractor call is timed on its own
    with a monotonic clock. The timed region is single-threaded.

    :param extractor: A callable taking a :class:`GrayImage`
    :param corpus: The images to extract features from
    :param name: Report name. Default: the extractor's ``__name__``
    :param clock: Monotonic nanosecond clock
    :raise ArgumentError: On an empty corpus, negative warmup or zero
        repetitions
    """
    if not corpus:
        raise ArgumentError("Cannot benchmark on an empty corpus")
    if repetitions < 1:
        raise ArgumentError(f"repetitions must be >= 1, got {repetitions}")
    if warmup < 0:
        raise ArgumentError(f"warmup must be >= 0, got {warmup}")

    name = name or getattr(extractor, "__name__", repr(extractor))
    checksum = 0.0

    for _ in range(warmup):
        for img in corpus:
            checksum += _checksum(extractor(img))

    samples_ms: list[float] = []
    for _ in range(repetitions):
        for img in corpus:
            start = clock()
            result = extractor(img)
            elapsed = clock() - start
            samples_ms.append(max(elapsed, 0) / 1e6)
            checksum += _checksum(result)

    report = TimingReport.from_samples(
        name, samples_ms, warmup_runs=warmup, repetitions=repetitions
    )
    logger.info(
        "%s: %.3f ms/sample over %d samples (checksum %.6g)",
        name,
        report.mean_ms,
        report.n_samples,
        checksum,
    )
    return report


def benchmark_extractors(
    extractors: Mapping[str, Callable[[GrayImage], Any]],
    corpus: Sequence[GrayImage],
    warmup: int = DEFAULT_WARMUP,
    repetitions: int = DEFAULT_REPETITIONS,
    *,
    clock: Clock = time.perf_counter_ns,
) -> list[TimingReport]:
    """
    Benchmark several named extractors on the same corpus, one after the
    other, in the given order.
    """
    return [
        benchmark_extractor(
            fn, corpus, warmup, repetitions, name=name, clock=clock
        )
        for name, fn in extractors.items()
    ]
