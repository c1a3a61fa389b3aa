import logging
from dataclasses import dataclass, field
from pathlib import Path

from .._exceptions import ArgumentError
from .._model import Condition
from ..imaging import IMAGE_EXTENSIONS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DatasetEntry:
    subject_id: str
    image_id: str
    condition: Condition
    path: Path

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject_id, self.image_id, self.condition.value)


@dataclass
class DatasetScan:
    """
    Images found under a dataset root, in key order, plus the number of
    files that were skipped.
    """

    entries: list[DatasetEntry] = field(default_factory=list)
    skipped: int = 0

    def __len__(self) -> int:
        return len(self.entries)


def scan_dataset(root: str | Path) -> DatasetScan:
    """
    Find the images of a dataset laid out as
    ``<root>/<condition>/<subject_id>/<image_id>.(png|jpg|jpeg)``.

    Directories that don't name a known condition and files with other
    extensions are skipped with a warning.

    :raise ArgumentError: If the root is not a directory
    """
    root = Path(root)
    if not root.is_dir():
        raise ArgumentError(f"Not a directory: {root}")

    scan = DatasetScan()
    seen: dict[tuple, Path] = {}

    for condition_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        try:
            condition = Condition.from_raw(condition_dir.name)
        except ArgumentError:
            logger.warning("Skipping %s: unknown condition", condition_dir)
            scan.skipped += 1
            continue

        for subject_dir in sorted(p for p in condition_dir.iterdir() if p.is_dir()):
            for path in sorted(subject_dir.iterdir()):
                if not path.is_file():
                    continue
                if path.suffix.lower() not in IMAGE_EXTENSIONS:
                    logger.warning("Skipping %s: not an image", path)
                    scan.skipped += 1
                    continue

                entry = DatasetEntry(
                    subject_id=subject_dir.name,
                    image_id=path.stem,
                    condition=condition,
                    path=path,
                )
                if entry.key in seen:
                    logger.warning(
                        "Skipping %s: same image id as %s", path, seen[entry.key]
                    )
                    scan.skipped += 1
                    continue

                seen[entry.key] = path
                scan.entries.append(entry)

    scan.entries.sort(key=lambda e: e.key)
    logger.info(
        "Found %d images under %s (%d skipped)", len(scan.entries), root, scan.skipped
    )
    return scan
