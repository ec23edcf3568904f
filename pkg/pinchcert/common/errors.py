# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Central collection of pinchcert specific Error types"""

from dataclasses import dataclass


class PinchcertError(Exception):
    """Base class for all errors raised by pinchcert"""


class DomainError(PinchcertError, ValueError):
    """Error class to indicate parameters outside of the domain of a formula, e.g. odd n or k < 2"""


class NestedRadicalError(DomainError):
    """Exception for square roots of irrational values, which exact scalars can not represent"""


class NonDominantWeightError(DomainError):
    """Exception for highest weights with a negative coefficient"""


@dataclass
class AssemblyMismatchError(PinchcertError):
    """
    Error class to indicate that a coefficient re-derived from its constituent bounds differs from the
    closed form, which points to a transcription error in one of the two
    """

    coefficient: str
    assembled: str
    printed: str

    def __str__(self) -> str:
        return f"Coefficient '{self.coefficient}' differs: assembled {self.assembled}, closed form {self.printed}"


@dataclass
class CurvatureInvariantError(PinchcertError):
    """Error class to indicate that a tensor violates an algebraic curvature tensor invariant"""

    invariant: str
    residual: float
    tolerance: float

    def __str__(self) -> str:
        return f"Invariant '{self.invariant}' violated: residual {self.residual:.3e} > {self.tolerance:.1e}"


class CalibrationError(PinchcertError):
    """Exception for random curvature tensors whose holomorphic curvature range is degenerate"""


@dataclass
class PreconditionViolationError(PinchcertError):
    """Error class to indicate a section which does not satisfy the assumptions of an identity"""

    check: str
    detail: str

    def __str__(self) -> str:
        return f"Precondition '{self.check}' violated: {self.detail}"


class DecompositionGuardError(PinchcertError):
    """Exception for a character decomposition that accounts for more dimensions than the module has"""


class RunConfigError(PinchcertError):
    """Error class to indicate an invalid run configuration, e.g. an empty range"""


class MissingLogFileError(PinchcertError):
    """Exception to indicate a missing logging file when FormatterDestination.FILE is specified."""
