import argparse
import logging
import sys

from .._exceptions import FaceIdException
from .._model import DescriptorId, Metric
from ._commands import (
    EXIT_USAGE_ERROR,
    cmd_bench,
    cmd_evaluate,
    cmd_evaluate_pairs,
    cmd_extract,
    cmd_synth_dataset,
)
from ._config import OutputFormat, RunConfig

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        help="TOML configuration file",
    )
    common.add_argument(
        "--jobs",
        type=int,
        help="Worker threads for image decoding, extraction and probe scoring",
    )
    common.add_argument(
        "--seed",
        type=int,
        help="Base seed: gallery seed N, probe seed N+1, synthetic corpus seed N",
    )
    common.add_argument(
        "--format",
        dest="output_format",
        choices=[f.value for f in OutputFormat],
        help="Report format (default: csv)",
    )
    common.add_argument(
        "--log-level",
        default="INFO",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Logging level",
    )
    return common


def _build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="faceid",
        description="Face identification with handcrafted descriptors and "
        "precomputed embeddings",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    extract = commands.add_parser(
        "extract", parents=[common], help="Extract features from a dataset"
    )
    extract.add_argument(
        "input_dir", help="Dataset root: <condition>/<subject_id>/<image_id>.png"
    )
    extract.add_argument("-o", "--output", required=True, help="Feature file")
    extract.add_argument(
        "--descriptor",
        help="Descriptor to extract: "
        + ", ".join(d.value for d in DescriptorId.handcrafted()),
    )

    evaluate = commands.add_parser(
        "evaluate", parents=[common], help="Compute the CMC of a gallery/probe split"
    )
    evaluate.add_argument("gallery", help="Gallery feature or embedding file")
    evaluate.add_argument(
        "probe",
        nargs="?",
        help="Probe feature or embedding file. Required unless --pairs is set",
    )
    evaluate.add_argument("-o", "--output", required=True, help="Report file")
    evaluate.add_argument(
        "--pairs",
        action="store_true",
        help="Evaluate all office/day pairings of the gallery file",
    )
    evaluate.add_argument("--metric", choices=[m.value for m in Metric])
    evaluate.add_argument("--gallery-per-subject", type=int)
    evaluate.add_argument("--probes-per-subject", type=int)
    evaluate.add_argument("--max-rank", type=int)

    bench = commands.add_parser(
        "bench", parents=[common], help="Measure per-sample extraction time"
    )
    bench.add_argument("input_dir", help="Dataset root")
    bench.add_argument(
        "-d",
        "--descriptors",
        nargs="+",
        default=[d.value for d in DescriptorId.handcrafted()],
        help="Descriptors to benchmark (default: all six)",
    )
    bench.add_argument("-o", "--output", required=True, help="Timing report file")
    bench.add_argument("--warmup", type=int)
    bench.add_argument("--repetitions", type=int)
    bench.add_argument("--host", help="Device label (default: host name)")

    synth = commands.add_parser(
        "synth-dataset", parents=[common], help="Generate a synthetic corpus"
    )
    synth.add_argument("output", help="Output dataset root")

    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig.load(args.config) if args.config else RunConfig()
    overrides = {
        name: getattr(args, name, None)
        for name in (
            "gallery_per_subject",
            "probes_per_subject",
            "max_rank",
            "warmup",
            "repetitions",
            "host",
        )
    }
    return config.with_overrides(
        seed=args.seed,
        jobs=args.jobs,
        output_format=args.output_format,
        metric=getattr(args, "metric", None),
        descriptor=getattr(args, "descriptor", None),
        **overrides,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format=LOG_FORMAT, stream=sys.stderr)

    if args.command == "evaluate" and not args.pairs and not args.probe:
        parser.error("evaluate needs a probe file unless --pairs is set")

    try:
        config = _load_config(args)
    except (FaceIdException, OSError) as e:
        logger.error("Invalid configuration: %s", getattr(e, "message", None) or e)
        return EXIT_USAGE_ERROR

    if args.command == "extract":
        return cmd_extract(config, args.input_dir, args.output)
    if args.command == "evaluate":
        if args.pairs:
            return cmd_evaluate_pairs(config, args.gallery, args.output)
        return cmd_evaluate(config, args.gallery, args.probe, args.output)
    if args.command == "bench":
        return cmd_bench(config, args.input_dir, args.descriptors, args.output)
    return cmd_synth_dataset(config, args.output)
