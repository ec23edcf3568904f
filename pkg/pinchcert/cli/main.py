#!/usr/bin/env python3

# Copyright (c) 2023 Celonis SE
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""Executable that is used to run the verification suites."""
import logging
import os
import sys
from typing import Any, Dict, List, Optional

sys.path.append(os.path.join(os.path.dirname(__file__), "../.."))

from pinchcert import cli  # pylint: disable=wrong-import-position
from pinchcert.cli.config import (  # pylint: disable=wrong-import-position
    Command,
    RunConfig,
    parse_config,
)
from pinchcert.cli.parsing import (  # pylint: disable=wrong-import-position
    command_of,
    parse_cli_args,
)
from pinchcert.cli.report import (  # pylint: disable=wrong-import-position
    build_report,
    render,
    write_report,
)
from pinchcert.cli.suites import (  # pylint: disable=wrong-import-position
    SuiteResult,
    run_suite,
)
from pinchcert.cli.summary import RunSummary  # pylint: disable=wrong-import-position
from pinchcert.common.errors import (  # pylint: disable=wrong-import-position
    DomainError,
    RunConfigError,
)
from pinchcert.common.logging import (  # pylint: disable=wrong-import-position
    Formatter,
    FormatterConfig,
    FormatterDestination,
    LoggingConfig,
    LogLevel,
    setup_logging,
)

logger: logging.Logger = logging.getLogger(__name__)


def _logging_config(run_config: RunConfig) -> LoggingConfig:
    logging_config: LoggingConfig = LoggingConfig(
        config=FormatterConfig.COLORED,
        formatter=Formatter.SWEEP if run_config.jobs > 1 else Formatter.REPORT,
        destination=FormatterDestination.STREAM,
        level=LogLevel.WARNING,
    )

    # verbosity implies debug mode
    if run_config.verbose or run_config.log_level == LogLevel.DEBUG:
        logging_config.set_verbose()

    # overwrite verbose debug logging level
    if run_config.log_level is not None:
        logging_config.level = int(run_config.log_level)

    return logging_config


def main(argv: Optional[List[str]] = None):
    # load and parse arguments and configuration information
    pinchcert_args_dict: Dict[str, Any] = parse_cli_args(sys.argv[1:] if argv is None else argv)

    # prevent config loading and parsing if --no-config was specified
    run_config: RunConfig = RunConfig.empty() if pinchcert_args_dict["no_config"] else parse_config()
    run_config.apply_cli_args(pinchcert_args_dict)
    command: Command = command_of(pinchcert_args_dict)

    setup_logging(_logging_config(run_config))

    # provide additional DEBUG information
    logger.debug(
        "%s - %s\n" "Caller:\t%s\n" "%s",  # pinchcert location and version; pinchcert caller; config info
        sys.argv[0],
        cli.__version__,
        sys.executable,
        run_config,
    )

    try:
        run_config.validate(command)
        result: SuiteResult = run_suite(command, run_config)
    except (RunConfigError, DomainError) as error:
        logger.error("%s", error)
        raise SystemExit(os.EX_USAGE) from error
    except Exception as error:  # pylint: disable=broad-except
        logger.exception("Unexpected error while running '%s', terminating.", command)
        raise SystemExit(os.EX_SOFTWARE) from error

    summary = RunSummary.of(result.certificates)
    report = build_report(command, run_config, result, summary)
    write_report(render(report, run_config.output_format), run_config.output)
    sys.stderr.write(str(summary))

    raise SystemExit(summary.exit_code())


if __name__ == "__main__":
    main()
