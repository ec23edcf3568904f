# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Run configuration class and related parsing utilities
"""
from __future__ import annotations

import configparser
import os
import re
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, ClassVar, Dict, Iterator, List, Optional, Tuple

from pinchcert.common.constants import BOUND_TOLERANCE, DEFAULT_PRECISION_BITS, DEFAULT_RESTARTS, DEFAULT_SAMPLES
from pinchcert.common.errors import RunConfigError
from pinchcert.common.logging import LogLevel
from pinchcert.common.parsing import PINCHCERT_CONFIG_FILENAME, default_locations, parse_configs

PINCHCERT_CONFIG_SECTION: str = "pinchcert"

DEFAULT_JOBS: int = 1
DEFAULT_TRIALS: int = 20


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"

    def __str__(self) -> str:
        return self.value


class Command(str, Enum):
    """Every runnable command, as '<group> <command>'."""

    THRESHOLDS_TABLE = "thresholds table"
    THRESHOLDS_VERIFY = "thresholds verify"
    CURVATURE_BISHOP_GOLDBERG = "curvature bishop-goldberg"
    FIBER_VERIFY = "fiber verify"
    LIE_EXCLUSION = "lie exclusion"
    LIE_E6_CUBIC = "lie e6-cubic"
    LIE_RH = "lie rh"
    ALL = "all"

    def __str__(self) -> str:
        return self.value


class Claim(str, Enum):
    CHAIN = "chain"
    MONOTONE = "monotone"
    LAMBDA0 = "lambda0"
    GAMMA_BRACKET = "gamma-bracket"
    ROOTS = "roots"
    SIDE_CLAIMS = "side-claims"
    PROJECTOR_BOUND = "projector-bound"

    def __str__(self) -> str:
        return self.value


class Identity(str, Enum):
    TANGENT = "tangent"
    SYMMETRIC = "symmetric"
    PROJECTOR_NORM = "projector-norm"
    CURVATURE_PAIRING = "curvature-pairing"

    def __str__(self) -> str:
        return self.value


# reference numbers accepted by "fiber verify --lemma"
LEMMA_ALIASES: Dict[str, Identity] = {
    "4.3i": Identity.TANGENT,
    "4.3ii": Identity.SYMMETRIC,
    "5.4norm": Identity.PROJECTOR_NORM,
    "4.1": Identity.CURVATURE_PAIRING,
}


def _parse_bool_str(value: str) -> bool:
    """parse boolean string analogously to configparser.getboolean"""
    return re.match(r"^(1|yes|true|on)$", value, re.IGNORECASE) is not None


@dataclass
class RunConfig:
    """Class to encapsulate and default the configuration of a verification run"""

    class EnvironmentVariables:
        """Encapsulation of all environment variables relevant to run configuration"""

        PINCHCERT_JOBS_ENV_VAR: ClassVar[str] = "PINCHCERT_JOBS"
        PINCHCERT_LOG_LEVEL_ENV_VAR: ClassVar[str] = "PINCHCERT_LOG_LEVEL"
        PINCHCERT_VERBOSE_ENV_VAR: ClassVar[str] = "PINCHCERT_VERBOSE"
        PINCHCERT_SEED_ENV_VAR: ClassVar[str] = "PINCHCERT_SEED"

        @classmethod
        def __iter__(cls) -> Iterator[str]:
            yield from (
                cls.PINCHCERT_JOBS_ENV_VAR,
                cls.PINCHCERT_LOG_LEVEL_ENV_VAR,
                cls.PINCHCERT_VERBOSE_ENV_VAR,
                cls.PINCHCERT_SEED_ENV_VAR,
            )

        @classmethod
        def get_jobs(cls) -> Optional[int]:
            if jobs := os.getenv(cls.PINCHCERT_JOBS_ENV_VAR):
                return int(jobs)
            return None

        @classmethod
        def get_log_level(cls) -> Optional[str]:
            return os.getenv(cls.PINCHCERT_LOG_LEVEL_ENV_VAR)

        @classmethod
        def get_verbose(cls) -> Optional[bool]:
            if (verbose := os.getenv(cls.PINCHCERT_VERBOSE_ENV_VAR)) is not None:
                return _parse_bool_str(verbose)
            return None

        @classmethod
        def get_seed(cls) -> Optional[int]:
            if seed := os.getenv(cls.PINCHCERT_SEED_ENV_VAR):
                return int(seed)
            return None

    files: List[str]
    jobs: int
    log_level: Optional[LogLevel]
    verbose: bool
    seed: Optional[int]
    restarts: int
    tolerance: float
    precision_bits: int
    output_format: OutputFormat

    # command parameters, set from the command line
    output: Optional[Path] = None
    m_range: Tuple[int, int] = (6, 100)
    n_range: Tuple[int, int] = (10, 1_000)
    k_max: int = 200
    n: int = 8
    k: int = 2
    lam: float = 0.95
    trials: int = DEFAULT_TRIALS
    samples: int = DEFAULT_SAMPLES
    p_max: int = 20
    claim: Claim = Claim.CHAIN
    identity: Identity = Identity.PROJECTOR_NORM
    quick: bool = False

    def __init__(
        self,
        *,
        files: List[str],
        jobs: Optional[int] = None,
        log_level: Optional[str] = None,
        verbose: Optional[bool] = None,
        seed: Optional[int] = None,
        restarts: Optional[int] = None,
        tolerance: Optional[float] = None,
        precision_bits: Optional[int] = None,
        output_format: Optional[str] = None,
    ):
        self.files = files

        # configurations via environmental variables have higher precedence than those specified via config files
        self.jobs = self.EnvironmentVariables.get_jobs() or jobs or DEFAULT_JOBS
        self.log_level = LogLevel.from_str(self.EnvironmentVariables.get_log_level() or log_level)

        verbose = self.EnvironmentVariables.get_verbose() or verbose
        self.verbose = verbose is not None and verbose

        env_seed = self.EnvironmentVariables.get_seed()
        self.seed = env_seed if env_seed is not None else seed

        self.restarts = restarts or DEFAULT_RESTARTS
        self.tolerance = BOUND_TOLERANCE if tolerance is None else tolerance
        self.precision_bits = precision_bits or DEFAULT_PRECISION_BITS
        self.output_format = OutputFormat(output_format or OutputFormat.JSON)

    @classmethod
    def empty(cls) -> RunConfig:
        return cls(files=[])

    @classmethod
    def from_config_section(cls, files: List[str], pinchcert_config: configparser.SectionProxy) -> RunConfig:
        return RunConfig(
            files=files,
            jobs=pinchcert_config.getint("jobs"),
            log_level=pinchcert_config.get("log_level"),
            verbose=pinchcert_config.getboolean("verbose"),
            seed=pinchcert_config.getint("seed"),
            restarts=pinchcert_config.getint("restarts"),
            tolerance=pinchcert_config.getfloat("tolerance"),
            precision_bits=pinchcert_config.getint("precision_bits"),
            output_format=pinchcert_config.get("format"),
        )

    def apply_cli_args(self, args: Dict[str, Any]):
        """Command line arguments have the highest precedence; None means the flag was not given."""
        fields = {
            "jobs": "jobs",
            "seed": "seed",
            "restarts": "restarts",
            "tol": "tolerance",
            "precision_bits": "precision_bits",
            "output": "output",
            "k_max": "k_max",
            "n": "n",
            "k": "k",
            "lam": "lam",
            "trials": "trials",
            "samples": "samples",
            "p_max": "p_max",
            "quick": "quick",
        }
        for arg, attribute in fields.items():
            if args.get(arg) is not None:
                setattr(self, attribute, args[arg])

        if args.get("format") is not None:
            self.output_format = OutputFormat(args["format"])
        if args.get("claim") is not None:
            self.claim = Claim(args["claim"])
        if args.get("identity") is not None:
            self.identity = Identity(args["identity"])
        if args.get("lemma") is not None:
            self.identity = LEMMA_ALIASES[args["lemma"]]
        if args.get("m_min") is not None or args.get("m_max") is not None:
            self.m_range = (args.get("m_min") or self.m_range[0], args.get("m_max") or self.m_range[1])
        if args.get("n_min") is not None or args.get("n_max") is not None:
            self.n_range = (args.get("n_min") or self.n_range[0], args.get("n_max") or self.n_range[1])
        if args.get("verbose"):
            self.verbose = True
        if args.get("log_level") is not None:
            self.log_level = LogLevel.from_str(args["log_level"])

    def validate(self, command: Command):
        """Raise RunConfigError for configurations the command can not run with."""
        if self.jobs < 1:
            raise RunConfigError(f"jobs must be positive, got {self.jobs}")
        if self.trials < 1:
            raise RunConfigError(f"trials must be positive, got {self.trials}")

        if command == Command.THRESHOLDS_TABLE:
            m_min, m_max = self.m_range
            if m_min > m_max:
                raise RunConfigError(f"Empty m-range [{m_min}, {m_max}]")
            if m_min < 6 or m_min % 2:
                raise RunConfigError(f"m-min must be even and >= 6, got {m_min}")

        if command == Command.THRESHOLDS_VERIFY:
            n_min, n_max = self.n_range
            if n_min > n_max:
                raise RunConfigError(f"Empty n-range [{n_min}, {n_max}]")
            if self.claim == Claim.MONOTONE and self.k_max < 3:
                raise RunConfigError(f"Monotonicity needs k-max >= 3, got {self.k_max}")

        if command == Command.CURVATURE_BISHOP_GOLDBERG:
            if self.n < 4 or self.n % 2:
                raise RunConfigError(f"n must be even and >= 4, got {self.n}")
            if not 0.0 < self.lam <= 1.0:
                raise RunConfigError(f"lambda must lie in (0, 1], got {self.lam}")
            if self.samples < 0 or self.restarts < 1:
                raise RunConfigError("samples must be nonnegative and restarts positive")

        if command == Command.FIBER_VERIFY:
            if self.n < 4 or self.n % 2:
                raise RunConfigError(f"n must be even and >= 4, got {self.n}")
            if self.identity == Identity.PROJECTOR_NORM and (self.n % 4 or self.n < 8):
                raise RunConfigError(f"The projector witness needs n divisible by 4 and >= 8, got {self.n}")
            if self.k < 0:
                raise RunConfigError(f"k must be nonnegative, got {self.k}")

        if command == Command.LIE_EXCLUSION and self.p_max < 13:
            raise RunConfigError(f"p-max must be >= 13, got {self.p_max}")
        if command == Command.LIE_RH and self.n_range[1] < 1:
            raise RunConfigError(f"n-max must be positive, got {self.n_range[1]}")

    def to_jsonable(self) -> Dict[str, Any]:
        return {
            "jobs": self.jobs,
            "seed": self.seed,
            "restarts": self.restarts,
            "tolerance": self.tolerance,
            "precision_bits": self.precision_bits,
            "format": str(self.output_format),
            "m_range": list(self.m_range),
            "n_range": list(self.n_range),
            "k_max": self.k_max,
            "n": self.n,
            "k": self.k,
            "lambda": self.lam,
            "trials": self.trials,
            "samples": self.samples,
            "p_max": self.p_max,
            "claim": str(self.claim),
            "identity": str(self.identity),
            "quick": self.quick,
        }

    def __str__(self):
        return (
            f'Configuration (from [{", ".join(self.files)}]):\n'
            f"\tjobs:\t\t{self.jobs}\n"
            f"\tlog_level:\t{self.log_level}\n"
            f"\tverbose:\t{self.verbose}\n"
            f"\tseed:\t\t{self.seed}\n"
            f"\trestarts:\t{self.restarts}\n"
            f"\ttolerance:\t{self.tolerance}\n"
            f"\tprecision_bits:\t{self.precision_bits}\n"
            f"\tformat:\t\t{self.output_format}\n"
        )


def parse_config(filenames: Optional[List[Path]] = None) -> RunConfig:
    try:
        files, cfg = parse_configs(filenames or default_locations(PINCHCERT_CONFIG_FILENAME))
    except configparser.Error as error:
        sys.stderr.write(f"{error}; using default configuration instead\n")
        return RunConfig.empty()

    if PINCHCERT_CONFIG_SECTION not in cfg.sections():
        return RunConfig(files=files)

    return RunConfig.from_config_section(files, cfg[PINCHCERT_CONFIG_SECTION])
