from ._harness import (
    DEFAULT_REPETITIONS,
    DEFAULT_WARMUP,
    TimingReport,
    benchmark_extractor,
    benchmark_extractors,
)
from ._report import (
    TIMING_COLUMNS,
    TIMING_SCHEMA_VERSION,
    timing_rows,
    write_timing_csv,
    write_timing_json,
)

__all__ = [
    "DEFAULT_REPETITIONS",
    "DEFAULT_WARMUP",
    "TIMING_COLUMNS",
    "TIMING_SCHEMA_VERSION",
    "TimingReport",
    "benchmark_extractor",
    "benchmark_extractors",
    "timing_rows",
    "write_timing_csv",
    "write_timing_json",
]
