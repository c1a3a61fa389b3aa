import csv
import json
import logging
from pathlib import Path
from typing import Iterable

from ._harness import TimingReport

logger = logging.getLogger(__name__)

TIMING_SCHEMA_VERSION = 1

TIMING_COLUMNS = (
    "schema_version",
    "model",
    "params_m",
    "device",
    "extraction_time_ms",
    "n_samples",
    "warmup_runs",
    "repetitions",
    "mean_ms",
    "median_ms",
    "std_ms",
    "min_ms",
    "max_ms",
)


def timing_rows(
    reports: Iterable[TimingReport],
    host: str = "",
    params_millions: dict[str, float] | None = None,
) -> list[dict]:
    params_millions = params_millions or {}
    return [
        {
            "schema_version": TIMING_SCHEMA_VERSION,
            **r.to_row(params_millions.get(r.extractor_name), host),
        }
        for r in reports
    ]


def _csv_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_timing_csv(path: str | Path, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(TIMING_COLUMNS)
        for row in rows:
            writer.writerow([_csv_value(row.get(c)) for c in TIMING_COLUMNS])
    logger.info("Wrote %d timing rows to %s", len(rows), path)


def write_timing_json(path: str | Path, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(
            {"schema_version": TIMING_SCHEMA_VERSION, "rows": rows},
            f,
            indent=2,
            sort_keys=True,
        )
        f.write("\n")
    logger.info("Wrote %d timing rows to %s", len(rows), path)
