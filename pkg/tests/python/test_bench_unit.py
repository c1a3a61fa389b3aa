import csv
import itertools
import json
import time
from unittest.mock import Mock

import numpy as np
import pytest

from faceid import ArgumentError
from faceid.bench import (
    TIMING_COLUMNS,
    TimingReport,
    benchmark_extractor,
    benchmark_extractors,
    timing_rows,
    write_timing_csv,
    write_timing_json,
)
from faceid.imaging import GrayImage


def _corpus(n: int) -> list[GrayImage]:
    return [GrayImage(np.full((4, 4), i, dtype=np.uint8)) for i in range(n)]


def _stepping_clock(durations_ns):
    # Each timed call reads the clock twice: start, then start + duration
    ticks = []
    now = 0
    for d in durations_ns:
        ticks += [now, now + d]
        now += d + 1_000
    return iter(ticks).__next__


def _sleeper(ms: float):
    def _extract(img):
        time.sleep(ms / 1000)
        return np.zeros(1)

    return _extract


def test_benchmark_counts_warmup_and_timed_calls():
    extractor = Mock(return_value=np.ones(3))
    report = benchmark_extractor(
        extractor,
        _corpus(3),
        warmup=2,
        repetitions=4,
        name="stub",
        clock=itertools.count(0, 1_000_000).__next__,
    )
    assert extractor.call_count == 3 * (2 + 4)
    assert report.n_samples == 12
    assert report.warmup_runs == 2
    assert report.repetitions == 4
    assert report.mean_ms == pytest.approx(1.0)


def test_benchmark_with_single_pass_times_every_image():
    report = benchmark_extractor(
        lambda img: img.data.sum(),
        _corpus(3),
        warmup=0,
        repetitions=1,
        clock=_stepping_clock([1_000_000, 2_000_000, 6_000_000]),
    )
    assert report.n_samples == 3
    assert report.mean_ms == pytest.approx(3.0)
    assert report.median_ms == pytest.approx(2.0)
    assert (report.min_ms, report.max_ms) == pytest.approx((1.0, 6.0))
    assert report.std_ms == pytest.approx(np.std([1.0, 2.0, 6.0]))


def test_benchmark_names_reports_after_the_extractor():
    def extract_stub(img):
        return 0

    report = benchmark_extractor(extract_stub, _corpus(1), warmup=0, repetitions=1)
    assert report.extractor_name == "extract_stub"


@pytest.mark.parametrize(
    "kwargs",
    [{"repetitions": 0}, {"warmup": -1}],
)
def test_benchmark_rejects_invalid_settings(kwargs):
    with pytest.raises(ArgumentError):
        benchmark_extractor(lambda img: 0, _corpus(1), **kwargs)


def test_benchmark_rejects_empty_corpus():
    with pytest.raises(ArgumentError):
        benchmark_extractor(lambda img: 0, [])


def test_sleeping_stubs_keep_their_ordering():
    reports = benchmark_extractors(
        {"fast": _sleeper(5), "slow": _sleeper(20)},
        _corpus(3),
        warmup=1,
        repetitions=3,
    )
    fast, slow = reports
    assert [r.extractor_name for r in reports] == ["fast", "slow"]
    assert fast.mean_ms < slow.mean_ms
    assert 5.0 <= fast.mean_ms <= 5.0 * 1.3
    assert 20.0 <= slow.mean_ms <= 20.0 * 1.3


def test_timing_report_validation():
    with pytest.raises(ArgumentError):
        TimingReport.from_samples("x", [], warmup_runs=0, repetitions=1)
    with pytest.raises(ArgumentError):
        TimingReport("x", 1, 0, 1, 1.0, 1.0, 0.0, 2.0, 1.0)


def test_timing_row_follows_the_extraction_time_table_layout():
    report = TimingReport.from_samples(
        "LBP", [1.0, 3.0], warmup_runs=3, repetitions=1
    )
    row = report.to_row(None, "ci-host")
    assert list(row)[:4] == ["model", "params_m", "device", "extraction_time_ms"]
    assert row["model"] == "LBP"
    assert row["device"] == "ci-host"
    assert row["extraction_time_ms"] == 2.0
    assert report.to_row(12.6)["params_m"] == 12.6


def test_csv_and_json_reports_hold_identical_values(tmp_path):
    reports = [
        TimingReport.from_samples(
            "LBP", [1.25, 2.5, 0.1], warmup_runs=3, repetitions=1
        ),
        TimingReport.from_samples("LPQ", [3.0, 4.0], warmup_runs=3, repetitions=1),
    ]
    rows = timing_rows(reports, host="ci-host", params_millions={"LPQ": 0.5})
    write_timing_csv(tmp_path / "t.csv", rows)
    write_timing_json(tmp_path / "t.json", rows)

    with open(tmp_path / "t.csv", newline="") as f:
        csv_rows = list(csv.DictReader(f))
    doc = json.loads((tmp_path / "t.json").read_text())

    assert doc["schema_version"] == 1
    assert tuple(csv_rows[0]) == TIMING_COLUMNS
    for csv_row, json_row in zip(csv_rows, doc["rows"]):
        for column in ("extraction_time_ms", "mean_ms", "median_ms", "std_ms"):
            assert float(csv_row[column]) == json_row[column]
        assert csv_row["device"] == json_row["device"] == "ci-host"

    assert csv_rows[0]["params_m"] == ""
    assert doc["rows"][0]["params_m"] is None
    assert doc["rows"][1]["params_m"] == 0.5
