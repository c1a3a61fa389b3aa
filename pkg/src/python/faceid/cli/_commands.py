import functools
import logging
import platform
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

from .._exceptions import ArgumentError, DimensionError, FaceIdException, FormatError
from .._model import DescriptorId, LabeledFeature
from ..bench import benchmark_extractors
from ..descriptors import get_extractor
from ..embeddings import load_features, write_features
from ..identification import evaluate_condition_pairs, evaluate_sets
from ..imaging import GrayImage, load_image, preprocess
from ..synthetic import generate_dataset, write_dataset
from ._config import RunConfig
from ._dataset import DatasetEntry, DatasetScan, scan_dataset
from ._reports import atomic_output, write_evaluation_report, write_timing_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL_ERROR = 1
EXIT_USAGE_ERROR = 2


def exit_status(func: Callable[..., None]) -> Callable[..., int]:
    """
    Run a command and map its outcome to an exit status: validation
    failures on the inputs exit with 2, anything unexpected with 1.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            func(*args, **kwargs)
        except (
            FaceIdException,
            FileNotFoundError,
            NotADirectoryError,
            IsADirectoryError,
            PermissionError,
        ) as e:
            logger.error("%s", getattr(e, "message", None) or e)
            return EXIT_USAGE_ERROR
        except Exception as e:
            logger.exception("Unexpected error: %s", e)
            return EXIT_INTERNAL_ERROR
        return EXIT_OK

    return wrapper


def _load_entry(entry: DatasetEntry, size: int) -> GrayImage | None:
    try:
        return preprocess(load_image(entry.path), size)
    except FormatError as e:
        logger.warning("Skipping %s: %s", entry.path, e.message)
        return None


def _load_corpus(scan: DatasetScan, config: RunConfig) -> list[GrayImage | None]:
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(lambda e: _load_entry(e, config.resize), scan.entries))


def _scan_nonempty(input_dir: str | Path) -> DatasetScan:
    scan = scan_dataset(input_dir)
    if not scan.entries:
        raise ArgumentError(f"No images found under {input_dir}")
    return scan


@exit_status
def cmd_extract(config: RunConfig, input_dir: str | Path, out: str | Path) -> None:
    """
    Extract the configured descriptor from every image of a dataset and
    write a feature file, one record per image, in key order.
    """
    extractor = get_extractor(config.descriptor)
    scan = _scan_nonempty(input_dir)

    def _extract(pair: tuple[DatasetEntry, GrayImage | None]) -> LabeledFeature | None:
        entry, img = pair
        if img is None:
            return None
        logger.debug("Extracting %s from %s", config.descriptor.value, entry.path)
        return LabeledFeature(
            subject_id=entry.subject_id,
            image_id=entry.image_id,
            condition=entry.condition,
            feature=extractor(img, config.params),
        )

    images = _load_corpus(scan, config)
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        results = list(pool.map(_extract, zip(scan.entries, images)))

    records = [r for r in results if r is not None]
    warnings = scan.skipped + len(results) - len(records)
    if not records:
        raise ArgumentError(f"No decodable images under {input_dir}")

    with atomic_output(out) as tmp:
        write_features(tmp, records)

    logger.info(
        "Extracted %s from %d images into %s (%d warnings)",
        config.descriptor.value,
        len(records),
        out,
        warnings,
    )


def _check_compatible(
    gallery: Sequence[LabeledFeature], probes: Sequence[LabeledFeature]
) -> None:
    if not gallery or not probes:
        raise ArgumentError("Feature files must not be empty")

    g, p = gallery[0].feature, probes[0].feature
    if g.descriptor_id != p.descriptor_id:
        raise ArgumentError(
            f"Descriptor mismatch: gallery {g.descriptor_id.value}, "
            f"probes {p.descriptor_id.value}"
        )
    if g.dim != p.dim:
        raise DimensionError(f"Dimension mismatch: gallery {g.dim}, probes {p.dim}")


@exit_status
def cmd_evaluate(
    config: RunConfig,
    gallery_features: str | Path,
    probe_features: str | Path,
    out: str | Path,
) -> None:
    """
    Enroll a gallery from one feature file, sample probes from another and
    write the CMC report.

    When both paths point to the same file the probes may reuse enrolled
    images (self-match evaluation).
    """
    self_match = Path(gallery_features).resolve() == Path(probe_features).resolve()
    gallery = load_features(gallery_features)
    probes = gallery if self_match else load_features(probe_features)
    _check_compatible(gallery, probes)

    if self_match:
        logger.info("Gallery and probe files are the same: self-match evaluation")

    result = evaluate_sets(
        gallery, probes, config.protocol_config(exclude_gallery=not self_match)
    )
    write_evaluation_report(out, [result], config.output_format)


@exit_status
def cmd_evaluate_pairs(
    config: RunConfig, features: str | Path, out: str | Path
) -> None:
    """
    Evaluate every same-condition and cross-condition pairing of the office
    and day images of one feature file.
    """
    dataset = load_features(features)
    if not dataset:
        raise ArgumentError(f"No records in {features}")

    results = evaluate_condition_pairs(dataset, config.protocol_config())
    write_evaluation_report(out, results, config.output_format)


@exit_status
def cmd_bench(
    config: RunConfig,
    input_dir: str | Path,
    descriptors: Sequence[str | DescriptorId],
    out: str | Path,
) -> None:
    """
    Time the per-sample extraction of each requested descriptor over the
    images of a directory. Decoding and resizing happen before the timed
    region.
    """
    if not descriptors:
        raise ArgumentError("No descriptors to benchmark")

    extractors = {}
    for name in descriptors:
        descriptor_id = DescriptorId.from_raw(name)
        extractor = get_extractor(descriptor_id)
        extractors[descriptor_id.value] = functools.partial(
            extractor, params=config.params
        )

    scan = _scan_nonempty(input_dir)
    corpus = [img for img in _load_corpus(scan, config) if img is not None]
    if not corpus:
        raise ArgumentError(f"No decodable images under {input_dir}")

    reports = benchmark_extractors(
        extractors, corpus, warmup=config.warmup, repetitions=config.repetitions
    )
    write_timing_report(
        out,
        reports,
        config.output_format,
        host=config.host or platform.node(),
    )


@exit_status
def cmd_synth_dataset(config: RunConfig, out_dir: str | Path) -> None:
    """
    Generate a seeded synthetic identification corpus under ``out_dir``.
    """
    synth = config.synth
    samples = generate_dataset(
        synth.n_subjects,
        synth.images_per_subject,
        conditions=synth.conditions,
        seed=synth.seed,
        noise_sigma=synth.noise_sigma,
        day_shift=synth.day_shift,
        day_contrast=synth.day_contrast,
        day_ramp=synth.day_ramp,
        size=synth.size,
    )
    write_dataset(out_dir, samples)
