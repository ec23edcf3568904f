# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Rendering of run results as JSON reports and flat CSV projections"""
import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from pinchcert.cli import __version__
from pinchcert.cli.config import Command, OutputFormat, RunConfig
from pinchcert.cli.suites import SuiteResult
from pinchcert.cli.summary import RunSummary
from pinchcert.common.certificate import to_jsonable
from pinchcert.common.constants import ENCODING, REPORT_SCHEMA_VERSION

logger = logging.getLogger(__name__)

TOOL_NAME: str = "pinchcert"

CERTIFICATE_COLUMNS: List[str] = ["claim_id", "verdict", "params", "witnesses", "seed", "runtime_ms", "statement"]


def build_report(command: Command, config: RunConfig, result: SuiteResult, summary: RunSummary) -> Dict[str, Any]:
    return {
        "schema": REPORT_SCHEMA_VERSION,
        "tool": TOOL_NAME,
        "version": __version__,
        "command": str(command),
        "config": config.to_jsonable(),
        "certificates": [certificate.to_dict() for certificate in result.certificates],
        "rows": to_jsonable(result.rows),
        "summary": summary.to_jsonable(),
    }


def render_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(value: Any) -> str:
    """Nested values are embedded as compact JSON so every row stays flat."""
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return "" if value is None else str(value)


def _flatten_row(row: Dict[str, Any]) -> Dict[str, str]:
    flat: Dict[str, str] = {}
    for key, value in row.items():
        # exact scalars render as {"exact": ..., "decimal": ...}
        if isinstance(value, dict) and {"exact", "decimal"} <= value.keys():
            flat[key] = str(value["exact"])
            flat[f"{key}_decimal"] = str(value["decimal"])
        else:
            flat[key] = _cell(value)
    return flat


def render_csv(report: Dict[str, Any]) -> str:
    """The table rows for commands producing a table, otherwise one line per certificate."""
    buffer = io.StringIO()
    if report["rows"] and report["command"] != str(Command.ALL):
        rows = [_flatten_row(row) for row in report["rows"]]
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        writer = csv.DictWriter(buffer, fieldnames=CERTIFICATE_COLUMNS, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for certificate in report["certificates"]:
            writer.writerow({column: _cell(certificate.get(column)) for column in CERTIFICATE_COLUMNS})
    return buffer.getvalue()


def render(report: Dict[str, Any], output_format: OutputFormat) -> str:
    if output_format == OutputFormat.CSV:
        return render_csv(report)
    return render_json(report)


def write_report(content: str, output: Optional[Path]):
    """Write to output, or to standard output if no path was given."""
    if output is None:
        print(content, end="")
        return

    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(content, encoding=ENCODING)
    logger.info("Wrote report to '%s'", output)
