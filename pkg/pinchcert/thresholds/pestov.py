# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Pinching constants and the coefficient functions B(lambda), C(lambda) of the energy inequality for
complex normal twisted conformal Killing tensors, with their roots lambda_1, lambda_2, lambda_3.

Besides the closed forms, this module keeps a ledger of the individual bounds the coefficients are built
from, so that assemble_bc can re-derive B and C term by term and compare.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from pinchcert.common.errors import AssemblyMismatchError, DomainError
from pinchcert.numeric_core.exact import ExactScalar, Ordering, exact_compare, exact_max

logger = logging.getLogger(__name__)

Scalar = Union[ExactScalar, int, Fraction]

LAMBDA_FINAL_LIMIT: Fraction = Fraction(11, 12)
"""Limit of the final pinching constant as the complex dimension grows."""

YOUNG_EPSILON_MIN: Fraction = Fraction(12, 5)
"""Lower bound of 6*lambda/(1+lambda) on lambda >= 2/3, the weight of the Young inequality step."""


def _check_dimension(n: int):
    if n < 4 or n % 2:
        raise DomainError(f"Real dimension must be even and >= 4, got n={n}")


def _check_degree(k: int, minimum: int):
    if k < minimum:
        raise DomainError(f"Fourier degree must be >= {minimum}, got k={k}")


@dataclass(frozen=True)
class PestovConstants:
    """The constants alpha, beta, gamma, delta attached to real dimension n and Fourier degree k."""

    n: int
    k: int
    alpha: ExactScalar
    beta: ExactScalar
    gamma: Optional[ExactScalar]
    delta: ExactScalar

    @classmethod
    def of(cls, n: int, k: int) -> PestovConstants:
        _check_dimension(n)
        _check_degree(k, 1)

        alpha = ExactScalar.rational(k * (n + k - 2))
        beta = ExactScalar.sqrt(k * (n + k - 2) * (n - 1))
        gamma = (
            ExactScalar.rational(Fraction((n + k - 2) * (n + 2 * k - 4) * k, (n + k - 3) * (n + 2 * k - 2) * (k - 1)))
            if k >= 2
            else None
        )
        delta = ExactScalar.rational(n + 2 * k - 4)
        return cls(n, k, alpha, beta, gamma, delta)


@dataclass(frozen=True)
class AffineInLambda:
    """c0 + c1*lambda with exact coefficients."""

    constant: ExactScalar
    slope: ExactScalar

    @classmethod
    def of(cls, constant: Scalar = 0, slope: Scalar = 0) -> AffineInLambda:
        return cls(ExactScalar.coerce(constant), ExactScalar.coerce(slope))

    def __call__(self, lam: Scalar) -> ExactScalar:
        return self.constant + self.slope * lam

    def root(self) -> ExactScalar:
        if self.slope.is_zero:
            raise DomainError(f"{self} has no root, its lambda coefficient vanishes")
        return -self.constant / self.slope

    def __add__(self, other: Union[AffineInLambda, Scalar]) -> AffineInLambda:
        if isinstance(other, AffineInLambda):
            return AffineInLambda(self.constant + other.constant, self.slope + other.slope)
        return AffineInLambda(self.constant + other, self.slope)

    __radd__ = __add__

    def __neg__(self) -> AffineInLambda:
        return AffineInLambda(-self.constant, -self.slope)

    def __sub__(self, other: Union[AffineInLambda, Scalar]) -> AffineInLambda:
        return self + (-other)

    def __rsub__(self, other: Scalar) -> AffineInLambda:
        return (-self) + other

    def __mul__(self, factor: Scalar) -> AffineInLambda:
        return AffineInLambda(self.constant * factor, self.slope * factor)

    __rmul__ = __mul__

    def __truediv__(self, divisor: Scalar) -> AffineInLambda:
        return AffineInLambda(self.constant / divisor, self.slope / divisor)

    def __str__(self) -> str:
        return f"({self.constant}) + ({self.slope})*lambda"

    def to_jsonable(self):
        return {"constant": self.constant.to_jsonable(), "slope": self.slope.to_jsonable()}


LAMBDA = AffineInLambda.of(0, 1)
ONE = AffineInLambda.of(1, 0)


def b_coeff(n: int, k: int) -> AffineInLambda:
    """B(lambda) = (3lambda-2)/4*alpha - 8/3*(1-lambda)*beta - (1+lambda)/2."""
    constants = PestovConstants.of(n, k)
    return (
        (3 * LAMBDA - 2) * (constants.alpha / 4)
        - (ONE - LAMBDA) * (constants.beta * Fraction(8, 3))
        - (ONE + LAMBDA) / 2
    )


def c_coeff(n: int, k: int) -> AffineInLambda:
    """
    C(lambda) = gamma*[(3lambda-2)/2*alpha' - 8/3(1-lambda)beta' - 29(1+lambda)/48 - (1+lambda)/4*delta']
        - (1+lambda)/2*delta
    """
    _check_degree(k, 2)
    constants = PestovConstants.of(n, k)
    lower = PestovConstants.of(n, k - 1)
    assert constants.gamma is not None

    bracket = (
        (3 * LAMBDA - 2) * (lower.alpha / 2)
        - (ONE - LAMBDA) * (lower.beta * Fraction(8, 3))
        - (ONE + LAMBDA) * Fraction(29, 48)
        - (ONE + LAMBDA) * (lower.delta / 4)
    )
    return bracket * constants.gamma - (ONE + LAMBDA) * (constants.delta / 2)


def lambda1(n: int, k: int) -> ExactScalar:
    _check_degree(k, 2)
    constants = PestovConstants.of(n, k)
    alpha, beta = constants.alpha, constants.beta
    return (6 * alpha + 32 * beta + 6) / (9 * alpha + 32 * beta - 6)


def lambda2(n: int, k: int) -> ExactScalar:
    _check_degree(k, 2)
    constants = PestovConstants.of(n, k)
    lower = PestovConstants.of(n, k - 1)
    assert constants.gamma is not None
    alpha, beta, gamma, delta = constants.alpha, constants.beta, constants.gamma, constants.delta

    numerator = (
        6 * alpha
        + 32 * beta
        + 6
        + gamma * (6 * lower.alpha + 16 * lower.beta + Fraction(29, 8) + Fraction(3, 2) * lower.delta)
        + 3 * delta
    )
    denominator = (
        9 * alpha
        + 32 * beta
        - 6
        + gamma * (9 * lower.alpha + 16 * lower.beta - Fraction(29, 8) - Fraction(3, 2) * lower.delta)
        - 3 * delta
    )
    return numerator / denominator


def lambda3(n: int) -> ExactScalar:
    """Threshold of the degree-2 case: (6n + 16sqrt(2n(n-1)) + 6n/(n+2)) / (9n + 16sqrt(2n(n-1)) - 6n/(n+2))."""
    _check_dimension(n)
    root = ExactScalar.sqrt(2 * n * (n - 1))
    correction = Fraction(6 * n, n + 2)
    return (6 * n + 16 * root + correction) / (9 * n + 16 * root - correction)


def lambda_final(m: int) -> Fraction:
    """Final pinching constant (308m + 131)/(336m + 105) in complex dimension m."""
    return Fraction(308 * m + 131, 336 * m + 105)


def lambda0(m: int) -> ExactScalar:
    n = 2 * m
    return exact_max(lambda1(n, 4), lambda2(n, 4), lambda3(n))


def pinching_excludes(n: int, k: int, lam: Scalar) -> bool:
    """
    Whether B(lambda) > 0 and B(lambda) + C(lambda)/2 > 0, which rules out a nonzero tensor u of degree k:
    with ||u||^2 >= 2||i_v u||^2 the inequality B||u||^2 + C||i_v u||^2 <= 0 can then only hold for u = 0.
    """
    b_value = b_coeff(n, k)(lam)
    combined = (b_coeff(n, k) + c_coeff(n, k) / 2)(lam)
    return b_value.sign() > 0 and combined.sign() > 0


# ledger of the bounds that make up B and C


def curvature_pairing_bound(n: int, k: int) -> AffineInLambda:
    """Upper bound per ||f||^2 of the curvature pairing of the vertical gradient: -(3lambda-2)/4*alpha."""
    return -(3 * LAMBDA - 2) * (PestovConstants.of(n, k).alpha / 4)


def twist_bound(n: int, k: int, p: int) -> AffineInLambda:
    """Bound per ||f||^2 of the twist term for a bundle of tensor degree p: 4p/3*(1-lambda)*beta."""
    return (ONE - LAMBDA) * (PestovConstants.of(n, k).beta * Fraction(4 * p, 3))


def g_pairing_symmetric(n: int, k: int) -> Tuple[AffineInLambda, AffineInLambda]:
    """(1+lambda)/2 * <G u, grad u> for symmetric u commuting with J: coefficients of ||u||^2 and ||i_v u||^2."""
    half = (ONE + LAMBDA) / 2
    return half, half * PestovConstants.of(n, k).delta


def g_pairing_tangent(n: int, k: int, epsilon: Fraction = YOUNG_EPSILON_MIN) -> Tuple[AffineInLambda, AffineInLambda]:
    """
    (1+lambda)/2 * <G f, grad f> for vector valued f, after absorbing the cross term with the Young inequality
    of weight epsilon into the holomorphic part of the curvature pairing: coefficients of ||f||^2 and of
    ||i_v f||^2 + ||i_Jv f||^2.
    """
    half = (ONE + LAMBDA) / 2
    return half * (Fraction(1, 2) + 1 / (4 * epsilon)), half * (PestovConstants.of(n, k).delta / 4)


def x_plus_lower_bound(n: int, k: int) -> Tuple[AffineInLambda, AffineInLambda]:
    """
    Lower bound for the raising operator on vector valued degree-k tensors: coefficients of ||f||^2 and of
    ||i_v f||^2 + ||i_Jv f||^2, i.e. minus the sum of curvature, twist (p = 1) and G contributions.
    """
    norm_part, contraction_part = g_pairing_tangent(n, k)
    return -curvature_pairing_bound(n, k) - twist_bound(n, k, 1) - norm_part, -contraction_part


def contraction_factor(n: int, k: int) -> Fraction:
    """Factor relating ||X_- u||^2 for degree k to ||X_+ i_v u||^2: (k-1)(n+2k-2)/k."""
    return Fraction((k - 1) * (n + 2 * k - 2), k)


def lowering_factor(n: int, k: int) -> Fraction:
    """Coefficient of ||X_- u||^2 in the energy identity: (n+k-2)(n+2k-4)/(n+k-3)."""
    return Fraction((n + k - 2) * (n + 2 * k - 4), n + k - 3)


def assemble_bc(n: int, k: int) -> Tuple[AffineInLambda, AffineInLambda]:
    """
    Re-derive B and C from the ledger above and check them against b_coeff and c_coeff.

    For u of degree k with X_+ u = 0: the lowering term is bounded below through i_v u (degree k-1,
    i_Jv i_v u = 0, ||i_v i_v u|| <= ||i_v u||) and above by the curvature, twist (p = 2) and G bounds.
    """
    _check_dimension(n)
    _check_degree(k, 2)

    lower_norm, lower_contraction = x_plus_lower_bound(n, k - 1)
    raised = 2 * (lower_norm + lower_contraction)
    gamma = lowering_factor(n, k) / contraction_factor(n, k)

    g_norm, g_contraction = g_pairing_symmetric(n, k)
    assembled_b = -curvature_pairing_bound(n, k) - twist_bound(n, k, 2) - g_norm
    assembled_c = raised * gamma - g_contraction

    printed_constants = PestovConstants.of(n, k)
    if printed_constants.gamma != ExactScalar.rational(gamma):
        raise AssemblyMismatchError("gamma", str(gamma), str(printed_constants.gamma))

    for name, assembled, printed in (
        ("B.constant", assembled_b.constant, b_coeff(n, k).constant),
        ("B.slope", assembled_b.slope, b_coeff(n, k).slope),
        ("C.constant", assembled_c.constant, c_coeff(n, k).constant),
        ("C.slope", assembled_c.slope, c_coeff(n, k).slope),
    ):
        if exact_compare(assembled, printed) != Ordering.EQUAL:
            raise AssemblyMismatchError(name, str(assembled), str(printed))

    logger.debug("Assembled B and C agree with the closed forms at n=%d, k=%d", n, k)
    return assembled_b, assembled_c


def assemble_lambda3_inequality(n: int, include_norm_term: bool = True) -> AffineInLambda:
    """
    Degree-2 inequality with ||i_v u||^2 bounded by (n-2)/(n(n+2))*||u||^2 for u of degree 2:
    (3lambda-2)/2*n - 8/3(1-lambda)sqrt(2n(n-1)) - (1+lambda)/2*[1 + n*(n-2)/(n(n+2))] per ||u||^2, using
    alpha_{n,2} = 2n and delta_{n,2} = n. Dropping the ||u||^2 part of the G pairing gives the abbreviated variant.
    """
    _check_dimension(n)
    constants = PestovConstants.of(n, 2)
    ratio = Fraction(n - 2, n * (n + 2))
    g_norm, g_contraction = g_pairing_symmetric(n, 2)
    g_total = g_contraction * ratio + (g_norm if include_norm_term else AffineInLambda.of())

    return (
        (3 * LAMBDA - 2) * (constants.alpha / 4)
        - (ONE - LAMBDA) * (constants.beta * Fraction(8, 3))
        - g_total
    )
