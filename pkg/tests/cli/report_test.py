# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests for cli/report.py"""
import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from pytest import CaptureFixture

from pinchcert.cli import __version__
from pinchcert.cli.config import Command, OutputFormat, RunConfig
from pinchcert.cli.report import CERTIFICATE_COLUMNS, build_report, render, write_report
from pinchcert.cli.suites import SuiteResult
from pinchcert.cli.summary import RunSummary
from pinchcert.common.certificate import Certificate
from pinchcert.common.constants import REPORT_SCHEMA_VERSION
from pinchcert.numeric_core.exact import ExactScalar


def suite_result() -> SuiteResult:
    certificates = [
        Certificate.decide(
            "thresholds.table", "lambda(6) = 1979/2121", {"m": 6}, True, {"value": Fraction(1979, 2121)}
        )
    ]
    rows = [
        {"m": 6, "lambda_final": ExactScalar.rational(Fraction(1979, 2121)), "verdict": "holds"},
        {"m": 8, "lambda_final": ExactScalar.rational(Fraction(1, 2)), "verdict": "holds"},
    ]
    return SuiteResult(certificates, rows)


def report_of(command: Command, result: SuiteResult):
    return build_report(command, RunConfig.empty(), result, RunSummary.of(result.certificates))


class TestBuildReport:
    """Tests for build_report and JSON rendering"""

    def test_keys(self):
        report = report_of(Command.THRESHOLDS_TABLE, suite_result())

        assert set(report) == {"schema", "tool", "version", "command", "config", "certificates", "rows", "summary"}
        assert report["schema"] == REPORT_SCHEMA_VERSION
        assert report["tool"] == "pinchcert"
        assert report["version"] == __version__
        assert report["command"] == "thresholds table"
        assert report["rows"][0]["lambda_final"]["exact"] == "1979/2121"
        assert report["certificates"][0]["witnesses"] == {"value": "1979/2121"}
        assert report["summary"]["all_hold"]

    def test_json(self):
        report = report_of(Command.THRESHOLDS_TABLE, suite_result())

        assert json.loads(render(report, OutputFormat.JSON)) == report


class TestRenderCsv:
    """Tests for the CSV projection of reports"""

    def test_rows(self):
        content = render(report_of(Command.THRESHOLDS_TABLE, suite_result()), OutputFormat.CSV)
        lines = content.splitlines()

        assert lines[0] == "m,lambda_final,lambda_final_decimal,verdict"
        assert lines[1].startswith("6,1979/2121,0.93305")
        assert lines[1].endswith(",holds")
        assert len(lines) == 3

    def test_certificates_for_acceptance_suite(self):
        content = render(report_of(Command.ALL, suite_result()), OutputFormat.CSV)
        rows = list(csv.DictReader(io.StringIO(content)))

        assert content.splitlines()[0] == ",".join(CERTIFICATE_COLUMNS)
        assert len(rows) == 1
        assert rows[0]["claim_id"] == "thresholds.table"
        assert rows[0]["verdict"] == "holds"
        assert json.loads(rows[0]["params"]) == {"m": 6}
        assert rows[0]["seed"] == ""

    def test_certificates_without_rows(self):
        result = suite_result()
        result.rows = []
        content = render(report_of(Command.LIE_E6_CUBIC, result), OutputFormat.CSV)

        assert content.splitlines()[0] == ",".join(CERTIFICATE_COLUMNS)


class TestWriteReport:
    """Tests for write_report"""

    def test_stdout(self, capfd: CaptureFixture):
        write_report("m,rho\n", None)

        assert capfd.readouterr().out == "m,rho\n"

    def test_file(self, tmp_path: Path, capfd: CaptureFixture):
        output = tmp_path / "reports" / "report.json"
        write_report("{}\n", output)

        assert output.read_text() == "{}\n"
        assert capfd.readouterr().out == ""
