# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Parsing related functionality regarding the pinchcert command line"""
from __future__ import annotations

import logging
import os
import sys
from argparse import Action, ArgumentParser, ArgumentTypeError, RawTextHelpFormatter
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Union

from pinchcert import cli
from pinchcert.cli.config import DEFAULT_JOBS, DEFAULT_TRIALS, LEMMA_ALIASES, Claim, Command, Identity, OutputFormat
from pinchcert.common.constants import BOUND_TOLERANCE, DEFAULT_RESTARTS, DEFAULT_SAMPLES
from pinchcert.common.logging import LogLevel

logger = logging.getLogger(__name__)


class ShowVersion(Action):
    """show version and exit"""

    def __init__(self, **kwargs):
        super().__init__(nargs=0, help=self.__doc__, **kwargs)

    def __call__(self, *_):
        sys.stdout.write(f"pinchcert {cli.__version__}\n")
        sys.exit(os.EX_OK)


class _ArgumentParser(ArgumentParser):
    """ArgumentParser exiting with EX_USAGE instead of argparse's default status 2"""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(os.EX_USAGE)


def positive_int(value: Union[int, str], minimum: int = 0) -> int:
    value = int(value)

    if minimum < value:
        return value

    raise ArgumentTypeError(f"value must be more than {minimum}")


def unit_interval(value: str) -> float:
    lam = float(value)
    if 0.0 < lam <= 1.0:
        return lam
    raise ArgumentTypeError(f"lambda must lie in (0, 1], got {value}")


def _add_seed(parser: ArgumentParser):
    parser.add_argument("--seed", required=False, type=int, help="seed of the random number generator")


def _add_trials(parser: ArgumentParser):
    parser.add_argument(
        "--trials",
        required=False,
        type=positive_int,
        help=f"number of independent random trials, defaults to {DEFAULT_TRIALS}",
    )


def _add_thresholds(groups):
    thresholds = groups.add_parser("thresholds", help="pinching constants and their certified properties")
    commands = thresholds.add_subparsers(dest="command", required=True, metavar="COMMAND")

    table = commands.add_parser("table", help="lambda(m) and its ingredients for even m")
    table.add_argument("--m-min", required=False, type=int, help="smallest complex dimension, defaults to 6")
    table.add_argument("--m-max", required=False, type=int, help="largest complex dimension, defaults to 100")

    verify = commands.add_parser("verify", help="certify a claim about the pinching constants")
    verify.add_argument("--claim", required=True, choices=[str(claim) for claim in Claim])
    verify.add_argument("--n-min", required=False, type=int, help="smallest real dimension of the sweep")
    verify.add_argument("--n-max", required=False, type=int, help="largest real dimension of the sweep")
    verify.add_argument("--k-max", required=False, type=int, help="largest Fourier degree, defaults to 200")


def _add_curvature(groups):
    curvature = groups.add_parser("curvature", help="random pinched Kaehler curvature tensors")
    commands = curvature.add_subparsers(dest="command", required=True, metavar="COMMAND")

    bishop_goldberg = commands.add_parser("bishop-goldberg", help="pinching bounds on generated tensors")
    bishop_goldberg.add_argument("--n", required=False, type=int, help="real dimension, defaults to 8")
    bishop_goldberg.add_argument(
        "--lambda", dest="lam", required=False, type=unit_interval, help="pinching constant, defaults to 0.95"
    )
    _add_trials(bishop_goldberg)
    bishop_goldberg.add_argument(
        "--restarts",
        required=False,
        type=positive_int,
        help=f"random restarts per extremal problem, defaults to {DEFAULT_RESTARTS}",
    )
    _add_seed(bishop_goldberg)
    bishop_goldberg.add_argument(
        "--tol", required=False, type=float, help=f"slack of the bound checks, defaults to {BOUND_TOLERANCE}"
    )
    bishop_goldberg.add_argument(
        "--samples",
        required=False,
        type=int,
        help=f"random orthonormal pairs for the sampled bounds, defaults to {DEFAULT_SAMPLES}",
    )


def _add_fiber(groups):
    fiber = groups.add_parser("fiber", help="exact identities for sections over the unit sphere")
    commands = fiber.add_subparsers(dest="command", required=True, metavar="COMMAND")

    verify = commands.add_parser("verify", help="check an identity on seeded admissible sections")
    selection = verify.add_mutually_exclusive_group(required=True)
    selection.add_argument("--identity", choices=[str(identity) for identity in Identity])
    selection.add_argument("--lemma", choices=list(LEMMA_ALIASES), help="select the identity by its reference number")
    verify.add_argument("--n", required=False, type=int, help="real dimension, defaults to 8")
    verify.add_argument("--k", required=False, type=int, help="harmonic degree, defaults to 2")
    _add_trials(verify)
    _add_seed(verify)


def _add_lie(groups):
    lie = groups.add_parser("lie", help="Lie theoretic arithmetic of the exclusion argument")
    commands = lie.add_subparsers(dest="command", required=True, metavar="COMMAND")

    exclusion = commands.add_parser("exclusion", help="odd dimensional representations of exceptional algebras")
    exclusion.add_argument("--p-max", required=False, type=int, help="largest p with 2p+1 = dimension, defaults to 20")

    commands.add_parser("e6-cubic", help="invariants of e6 in S^2 and S^3 of its 27-dimensional representation")

    radon_hurwitz = commands.add_parser("rh", help="table of Radon-Hurwitz numbers")
    radon_hurwitz.add_argument("--n-max", default=100, type=positive_int, help="last n of the table, defaults to 100")


def parse_cli_args(args: List[str]) -> Dict[str, Any]:
    parser: ArgumentParser = _ArgumentParser(
        prog="pinchcert",
        description="Certificates for the quantitative claims behind holomorphic pinching results.",
        allow_abbrev=False,
        add_help=False,
        formatter_class=RawTextHelpFormatter,
    )

    general_options_group = parser.add_argument_group("Options")
    output_group = parser.add_argument_group(" Output")
    debug_group = parser.add_argument_group(" Debug")

    # show and exit
    show_and_exit = general_options_group.add_mutually_exclusive_group()
    show_and_exit.add_argument("--help", action="help", help="show this help message and exit")
    show_and_exit.add_argument("--version", action=ShowVersion)

    # general
    general_options_group.add_argument(
        "--jobs",
        "-j",
        required=False,
        metavar="LIMIT",
        type=positive_int,
        help=f"size of the worker pool for sweeps, defaults to {DEFAULT_JOBS}",
    )
    general_options_group.add_argument(
        "--no-config",
        action="store_true",
        help="enforce that only configurations provided via the CLI are used",
    )

    # output
    output_group.add_argument(
        "--format",
        required=False,
        choices=[str(output_format) for output_format in OutputFormat],
        help=f"report format, defaults to {OutputFormat.JSON}",
    )
    output_group.add_argument(
        "--output",
        "-o",
        required=False,
        metavar="PATH",
        type=Path,
        help="write the report to PATH instead of standard output",
    )

    # debug
    debug_group.add_argument(
        "--log-level",
        required=False,
        type=str,
        choices=[level.name for level in LogLevel],
        help=f"set detail level for log messages, defaults to {LogLevel.WARNING.name}",
    )
    debug_group.add_argument(
        "--verbose",
        required=False,
        action="store_true",
        help="enable a verbose mode which implies detailed and colored logging of debug messages",
    )

    groups = parser.add_subparsers(dest="group", required=True, metavar="GROUP")
    _add_thresholds(groups)
    _add_curvature(groups)
    _add_fiber(groups)
    _add_lie(groups)

    suite = groups.add_parser("all", help="run the complete acceptance suite")
    suite.add_argument("--quick", action="store_true", help="use reduced ranges and trial counts")
    _add_seed(suite)

    return vars(parser.parse_args(args))


def command_of(args: Dict[str, Any]) -> Command:
    if args["group"] == "all":
        return Command.ALL
    return Command(f"{args['group']} {args['command']}")
