# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests for cli/summary.py"""
import os
from typing import List

from pinchcert.cli.summary import RunSummary
from pinchcert.common.certificate import Certificate, Verdict


def certificates() -> List[Certificate]:
    return [
        Certificate.decide("thresholds.chain", "chain", {"n": 10}, True, runtime_ms=2.0),
        Certificate.decide("thresholds.chain", "chain", {"n": 12}, True, runtime_ms=3.0),
        Certificate.decide("lie.rh", "bound", {"n": 16}, False, {"rho": 9}, runtime_ms=1.0),
        Certificate("fiber.sampling.kernel", "kernel", {"k": 3}, Verdict.OUT_OF_RANGE),
    ]


class TestRunSummary:
    """Tests for RunSummary"""

    def test_stats(self):
        summary = RunSummary.of(certificates())

        assert list(summary.claim_stats) == ["thresholds.chain", "lie.rh", "fiber.sampling.kernel"]
        assert summary.claim_stats["thresholds.chain"].holds == 2
        assert summary.claim_stats["lie.rh"].fails == 1
        assert summary.claim_stats["fiber.sampling.kernel"].out_of_range == 1
        assert summary.total_runtime_ms == 6.0

    def test_failure(self):
        summary = RunSummary.of(certificates())

        assert not summary.all_hold
        assert summary.exit_code() == os.EX_DATAERR
        assert summary.to_jsonable() == {
            "all_hold": False,
            "certificates": 4,
            "claims": {
                "thresholds.chain": {"holds": 2, "fails": 0, "out_of_range": 0},
                "lie.rh": {"holds": 0, "fails": 1, "out_of_range": 0},
                "fiber.sampling.kernel": {"holds": 0, "fails": 0, "out_of_range": 1},
            },
        }

        summary_str = str(summary)
        assert "ok    \t2/2\tthresholds.chain" in summary_str
        assert "FAILED\t0/1\tlie.rh" in summary_str
        assert summary_str.endswith("some claims do not hold (6 ms)\n")

    def test_success(self):
        summary = RunSummary.of(certificates()[:2])

        assert summary.all_hold
        assert summary.exit_code() == os.EX_OK
        assert str(summary).endswith("all claims hold (5 ms)\n")

    def test_empty(self):
        summary = RunSummary.of([])

        assert summary.all_hold
        assert summary.to_jsonable() == {"all_hold": True, "certificates": 0, "claims": {}}
