import csv
import json
import logging
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Sequence

from ..bench import TimingReport, timing_rows, write_timing_csv, write_timing_json
from ..identification import EVALUATION_SCHEMA_VERSION, EvaluationResult
from ..render import ReportRenderer
from ._config import OutputFormat

logger = logging.getLogger(__name__)

EVALUATION_COLUMNS = (
    "schema_version",
    "label",
    "descriptor",
    "metric",
    "rank_1",
    "rank_5",
    "rank_10",
    "n_probes",
    "n_gallery",
    "n_subjects",
    "gallery_seed",
    "probe_seed",
    "probe_shortfall",
    "cmc",
)


@contextmanager
def atomic_output(path: str | Path) -> Iterator[Path]:
    """
    Yield a temporary path next to ``path`` and move it into place only if
    the block completes, so a failed run leaves no partial output.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.tmp")
    try:
        yield tmp
        os.replace(tmp, path)
    finally:
        tmp.unlink(missing_ok=True)


def evaluation_rows(results: Sequence[EvaluationResult]) -> list[dict]:
    return [
        {"schema_version": EVALUATION_SCHEMA_VERSION, **r.to_dict()} for r in results
    ]


def _csv_value(column: str, value) -> str:
    if column.startswith("rank_"):
        return f"{value:.2f}"
    if column == "cmc":
        return ";".join(repr(float(v)) for v in value)
    return str(value)


def write_evaluation_csv(
    path: str | Path, results: Sequence[EvaluationResult]
) -> None:
    rows = evaluation_rows(results)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(EVALUATION_COLUMNS)
        for row in rows:
            writer.writerow([_csv_value(c, row[c]) for c in EVALUATION_COLUMNS])


def write_evaluation_json(
    path: str | Path, results: Sequence[EvaluationResult]
) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(
            {
                "schema_version": EVALUATION_SCHEMA_VERSION,
                "rows": evaluation_rows(results),
            },
            f,
            indent=2,
            sort_keys=True,
        )
        f.write("\n")


def write_evaluation_report(
    path: str | Path,
    results: Sequence[EvaluationResult],
    output_format: OutputFormat,
) -> None:
    with atomic_output(path) as tmp:
        if output_format == OutputFormat.CSV:
            write_evaluation_csv(tmp, results)
        elif output_format == OutputFormat.JSON:
            write_evaluation_json(tmp, results)
        else:
            tmp.write_text(
                ReportRenderer().render_evaluation(results), encoding="utf-8"
            )

    logger.info(
        "Wrote %d evaluation rows to %s (%s)", len(results), path, output_format.value
    )


def write_timing_report(
    path: str | Path,
    reports: Sequence[TimingReport],
    output_format: OutputFormat,
    *,
    host: str,
    params_millions: dict[str, float] | None = None,
) -> None:
    with atomic_output(path) as tmp:
        if output_format == OutputFormat.MARKDOWN:
            tmp.write_text(
                ReportRenderer().render_timings(
                    reports, host=host, params_millions=params_millions
                ),
                encoding="utf-8",
            )
        else:
            rows = timing_rows(reports, host, params_millions)
            if output_format == OutputFormat.JSON:
                write_timing_json(tmp, rows)
            else:
                write_timing_csv(tmp, rows)
