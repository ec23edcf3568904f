# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the certificate module of pinchcert."""
import json
from fractions import Fraction

import numpy as np
import pytest

from pinchcert.common.certificate import Certificate, Stopwatch, Verdict, all_hold, to_jsonable
from pinchcert.numeric_core.exact import ExactScalar


class TestToJsonable:
    """Tests for the JSON normalisation of witnesses and parameters"""

    def test_fractions_stay_exact(self):
        assert to_jsonable(Fraction(1979, 2121)) == "1979/2121"
        assert to_jsonable({"ratio": Fraction(1, 24)}) == {"ratio": "1/24"}

    def test_numpy_values(self):
        assert to_jsonable(np.int64(7)) == 7
        assert isinstance(to_jsonable(np.float64(0.5)), float)
        assert to_jsonable(np.array([[1, 2], [3, 4]])) == [[1, 2], [3, 4]]

    def test_nested_and_enum(self):
        assert to_jsonable({1: (Verdict.HOLDS, None, True)}) == {"1": ["holds", None, True]}
        assert to_jsonable({3, 1, 2}) == [1, 2, 3]

    def test_exact_scalar(self):
        rendered = to_jsonable(ExactScalar.sqrt(2))
        assert rendered["exact"] == "1*sqrt(2)"
        assert rendered["decimal"].startswith("1.41421356")


class TestCertificate:
    """Tests for common/certificate.py"""

    def test_decide(self):
        certificate = Certificate.decide("numeric.example", "1 < 2", {"n": 1}, True)

        assert certificate.holds
        assert certificate.verdict == Verdict.HOLDS
        assert certificate.witnesses == {}

    def test_failing_certificate_needs_witness(self):
        with pytest.raises(ValueError):
            Certificate.decide("numeric.example", "2 < 1", {}, False)

        assert not Certificate.decide("numeric.example", "2 < 1", {}, False, {"left": 2}).holds

    def test_json_round_trip(self):
        certificate = Certificate.decide(
            "thresholds.example",
            "lambda(6) = 1979/2121",
            {"m": 6},
            True,
            {"value": Fraction(1979, 2121)},
            runtime_ms=1.5,
            seed=3,
        )
        json_str = certificate.get_json_str()

        assert json.loads(json_str)["claim_id"] == "thresholds.example"
        assert Certificate.from_json_str(json_str) == certificate

    def test_out_of_range(self):
        certificate = Certificate("fiber.example", "vacuous", {}, Verdict.OUT_OF_RANGE, {"kernel": None})

        assert not certificate.holds
        assert not all_hold([certificate, Certificate.decide("other", "holds", {}, True)])
        assert all_hold([])

    def test_stopwatch(self):
        stopwatch = Stopwatch()
        with stopwatch.measure():
            sum(range(1000))

        assert stopwatch.elapsed_ms >= 0.0
