import csv
import logging
import math
from pathlib import Path
from typing import Iterable

from .._exceptions import ArgumentError, FormatError
from .._model import Condition, DescriptorId, FeatureVector, LabeledFeature

logger = logging.getLogger(__name__)

DEFAULT_EMBEDDING_DIM = 512

EMBEDDING_HEADER = ("subject_id", "image_id", "condition", "dim")
FEATURE_HEADER = ("subject_id", "image_id", "condition", "descriptor_id", "dim")


def _parse_record(
    row: list[str], header: tuple[str, ...], path: str, line: int
) -> LabeledFeature:
    n_meta = len(header)
    if len(row) < n_meta:
        raise FormatError(
            f"Expected at least {n_meta} fields, got {len(row)}", path=path, line=line
        )

    meta = dict(zip(header, row[:n_meta]))
    try:
        condition = Condition.from_raw(meta["condition"])
        descriptor_id = DescriptorId.from_raw(
            meta.get("descriptor_id", DescriptorId.EMBEDDING)
        )
    except ArgumentError as e:
        raise FormatError(e.message, path=path, line=line) from e

    try:
        dim = int(meta["dim"])
    except ValueError as e:
        raise FormatError(f"Invalid dim '{meta['dim']}'", path=path, line=line) from e

    raw_values = row[n_meta:]
    if len(raw_values) != dim:
        raise FormatError(
            f"Record declares dim {dim} but carries {len(raw_values)} values",
            path=path,
            line=line,
        )

    try:
        values = [float(v) for v in raw_values]
    except ValueError as e:
        raise FormatError(f"Invalid value: {e}", path=path, line=line) from e
    if not all(math.isfinite(v) for v in values):
        raise FormatError("Non-finite value", path=path, line=line)

    try:
        return LabeledFeature(
            subject_id=meta["subject_id"],
            image_id=meta["image_id"],
            condition=condition,
            feature=FeatureVector(descriptor_id, values),
        )
    except (ArgumentError, ValueError) as e:
        raise FormatError(str(e), path=path, line=line) from e


def _read(
    path: str | Path,
    headers: tuple[tuple[str, ...], ...],
    expected_dim: int | None,
) -> list[LabeledFeature]:
    path_str = str(path)
    records: list[LabeledFeature] = []
    seen: dict[tuple, int] = {}

    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.reader(f)
            try:
                header = tuple(h.strip() for h in next(reader))
            except StopIteration as e:
                raise FormatError("Empty file", path=path_str) from e

            if header not in headers:
                raise FormatError(
                    f"Unexpected header {','.join(header)}", path=path_str, line=1
                )

            for row in reader:
                line = reader.line_num
                if not row:
                    continue

                record = _parse_record(row, header, path_str, line)
                declared = expected_dim if expected_dim is not None else (
                    records[0].feature.dim if records else record.feature.dim
                )
                if record.feature.dim != declared:
                    raise FormatError(
                        f"Expected dim {declared}, got {record.feature.dim}",
                        path=path_str,
                        line=line,
                    )
                if record.key in seen:
                    raise FormatError(
                        f"Duplicate record for subject '{record.subject_id}', image "
                        f"'{record.image_id}', condition '{record.condition.value}' "
                        f"(first seen on line {seen[record.key]})",
                        path=path_str,
                        line=line,
                    )

                seen[record.key] = line
                records.append(record)
    except (UnicodeDecodeError, csv.Error) as e:
        raise FormatError(f"Cannot parse CSV: {e}", path=path_str) from e

    descriptors = {r.feature.descriptor_id for r in records}
    if len(descriptors) > 1:
        raise FormatError(
            "Mixed descriptors: " + ", ".join(sorted(d.value for d in descriptors)),
            path=path_str,
        )

    logger.info("Loaded %d records from %s", len(records), path_str)
    return records


def load_embeddings(
    path: str | Path, expected_dim: int = DEFAULT_EMBEDDING_DIM
) -> list[LabeledFeature]:
    """
    Load precomputed deep-feature embeddings.

    The file starts with the header ``subject_id,image_id,condition,dim``;
    every following row holds those four fields followed by ``dim`` float
    values.

    :param path: Path of the CSV file
    :param expected_dim: The dimension every record must declare
    :raise FormatError: On malformed rows, dimension mismatches, duplicate
        (subject, image, condition) keys or non-finite values
    """
    return _read(path, (EMBEDDING_HEADER,), expected_dim)


def load_features(
    path: str | Path, expected_dim: int | None = None
) -> list[LabeledFeature]:
    """
    Load a feature file written by :func:`write_features`, or an embedding
    file. All records must share the same descriptor and dimension.
    """
    return _read(path, (FEATURE_HEADER, EMBEDDING_HEADER), expected_dim)


def _format_value(value: float) -> str:
    # repr is the shortest string that round-trips
    return repr(float(value))


def _canonical(records: Iterable[LabeledFeature]) -> list[LabeledFeature]:
    return sorted(records, key=lambda r: (r.subject_id, r.image_id, r.condition.value))


def write_embeddings(path: str | Path, records: Iterable[LabeledFeature]) -> None:
    """
    Write records in the embedding CSV format, sorted by key.
    """
    _write(path, records, with_descriptor=False)


def write_features(path: str | Path, records: Iterable[LabeledFeature]) -> None:
    """
    Write records in the feature-file format, i.e. the embedding CSV format
    with an additional ``descriptor_id`` column, sorted by key.
    """
    _write(path, records, with_descriptor=True)


def _write(
    path: str | Path, records: Iterable[LabeledFeature], *, with_descriptor: bool
) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = _canonical(records)

    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(FEATURE_HEADER if with_descriptor else EMBEDDING_HEADER)
        for r in rows:
            meta = [r.subject_id, r.image_id, r.condition.value]
            if with_descriptor:
                meta.append(r.feature.descriptor_id.value)
            meta.append(str(r.feature.dim))
            writer.writerow(meta + [_format_value(v) for v in r.feature.values])

    logger.info("Wrote %d records to %s", len(rows), path)
