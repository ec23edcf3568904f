# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Custom logging for single runs and worker-pool sweeps"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum, Flag, auto
from typing import Callable, Dict, Optional

from pinchcert.common.errors import MissingLogFileError

PACKAGE_LOGGER_NAME: str = "pinchcert"


class LogLevel(int, Enum):
    """LogLevel wrapper class for logging levels"""

    DEBUG = logging.DEBUG
    INFO = logging.INFO
    WARNING = logging.WARNING
    ERROR = logging.ERROR
    CRITICAL = logging.CRITICAL

    @classmethod
    def from_str(cls, log_level: Optional[str]) -> Optional[LogLevel]:
        return cls[log_level.upper()] if log_level else None

    def __str__(self) -> str:
        return self.name


class Formatter(Enum):
    """REPORT for single-threaded runs, SWEEP for runs that dispatch rows to a worker pool."""

    REPORT = auto()
    SWEEP = auto()


class FormatterConfig(Flag):
    """Flags to indicate whether a Formatter should display messages in detailed and/or colored mode."""

    NONE = 0
    COLORED = auto()
    DETAILED = auto()
    ALL = COLORED | DETAILED

    def is_none(self) -> bool:
        return self == self.NONE

    def is_colored(self) -> bool:
        return self & self.COLORED != self.NONE  # type: ignore

    def is_detailed(self) -> bool:
        return self & self.DETAILED != self.NONE  # type: ignore


class FormatterDestination(Enum):
    STREAM = auto()
    FILE = auto()


class _Formatter(logging.Formatter):
    """
    Builds one format per level from a bracketed level label, an optional context, an optional source location and
    the message. Subclasses choose the label and the context.
    """

    LEVEL_COLORS: Dict[int, str] = {
        logging.DEBUG: "\x1b[36;1m",  # light blue, bold
        logging.INFO: "\x1b[34;1m",  # dark blue, bold
        logging.WARNING: "\x1b[33;1m",  # yellow, bold
        logging.ERROR: "\x1b[31;1m",  # red, bold
        logging.CRITICAL: "\x1b[41;1m",  # red background
    }
    RESET: str = "\x1b[0m"

    label: str = "%(levelname)s"
    context: str = ""

    def __init__(self, config: FormatterConfig):
        super().__init__()
        self._config = config
        self._level_formatters: Dict[int, logging.Formatter] = {
            level: logging.Formatter(self._compose(color)) for level, color in self.LEVEL_COLORS.items()
        }
        # custom levels have no color assigned
        self._fallback = logging.Formatter(self._compose(None))

    def _compose(self, color: Optional[str]) -> str:
        label = f"{color}{self.label}{self.RESET}" if color and self._config.is_colored() else self.label
        location = "%(pathname)s:%(lineno)d:\n" if self._config.is_detailed() else ""
        return f"[{label}] {self.context}{location}%(message)s"

    def format(self, record: logging.LogRecord) -> str:
        return self._level_formatters.get(record.levelno, self._fallback).format(record)


class _ReportFormatter(_Formatter):
    """Messages carry a PINCHCERT prefix so they stay distinguishable from report output on the terminal."""

    label = "PINCHCERT-%(levelname)s"


class _SweepFormatter(_Formatter):
    """Interleaved rows of a worker pool stay attributable through timestamps and the worker thread name."""

    context = "%(asctime)s - %(threadName)s - "


FORMATTERS: Dict[Formatter, Callable[[FormatterConfig], _Formatter]] = {
    Formatter.REPORT: _ReportFormatter,
    Formatter.SWEEP: _SweepFormatter,
}


@dataclass
class LoggingConfig:
    """Class to centralize all possible configurations regarding logging"""

    formatter: Formatter
    config: FormatterConfig
    destination: FormatterDestination
    level: int
    filename: Optional[str] = None

    def set_verbose(self):
        self.config |= FormatterConfig.DETAILED
        self.level = logging.DEBUG


def _handler(logging_config: LoggingConfig) -> logging.Handler:
    if logging_config.destination == FormatterDestination.STREAM:
        return logging.StreamHandler()

    if logging_config.destination == FormatterDestination.FILE:
        if not logging_config.filename:
            raise MissingLogFileError
        return logging.FileHandler(logging_config.filename)

    raise ValueError(f"Unrecognized formatter destination '{logging_config.destination}'")


def setup_logging(logging_config: LoggingConfig) -> logging.Handler:
    """
    Set up the pinchcert package logger and return the installed handler, replacing any previous one.

    config      COLORED colors the level label, DETAILED adds the source location, ALL enables both.
    destination STREAM logs to stderr, FILE logs to "filename", which is then required.
    """
    handler = _handler(logging_config)
    handler.setFormatter(FORMATTERS[logging_config.formatter](logging_config.config))

    # only the package logger is configured, library users keep control over the root logger
    package_logger = logging.getLogger(PACKAGE_LOGGER_NAME)
    for old_handler in list(package_logger.handlers):
        package_logger.removeHandler(old_handler)
    package_logger.addHandler(handler)
    package_logger.setLevel(logging_config.level)

    return handler
