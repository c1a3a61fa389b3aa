from ._commands import (
    EXIT_INTERNAL_ERROR,
    EXIT_OK,
    EXIT_USAGE_ERROR,
    cmd_bench,
    cmd_evaluate,
    cmd_evaluate_pairs,
    cmd_extract,
    cmd_synth_dataset,
)
from ._config import OutputFormat, RunConfig, SynthConfig
from ._dataset import DatasetEntry, DatasetScan, scan_dataset
from ._main import main

__all__ = [
    "DatasetEntry",
    "DatasetScan",
    "EXIT_INTERNAL_ERROR",
    "EXIT_OK",
    "EXIT_USAGE_ERROR",
    "OutputFormat",
    "RunConfig",
    "SynthConfig",
    "cmd_bench",
    "cmd_evaluate",
    "cmd_evaluate_pairs",
    "cmd_extract",
    "cmd_synth_dataset",
    "main",
    "scan_dataset",
]
