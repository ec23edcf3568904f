# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Exact arithmetic in the ring generated by the rationals and square roots of nonnegative integers.

Values are kept as canonical sums q_1 + q_2*sqrt(d_2) + ... with squarefree, distinct radicands, so equality is
decided by comparing representations and order is decided by interval evaluation of a nonzero difference.
"""
from __future__ import annotations

import logging
from decimal import Context, Decimal
from enum import Enum
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import gcd
from typing import Dict, Iterable, List, Tuple, Union

import sympy

from pinchcert.common.constants import DECIMAL_DIGITS, DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS
from pinchcert.common.errors import DomainError, NestedRadicalError
from pinchcert.numeric_core.interval import DyadicInterval

logger = logging.getLogger(__name__)

Coercible = Union["ExactScalar", int, Fraction]


class Ordering(Enum):
    """Result of an exact comparison."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


@lru_cache(maxsize=4096)
def _squarefree_split(value: int) -> Tuple[int, int]:
    """Split value = square**2 * core with core squarefree; returns (square, core)."""
    if value == 0:
        return 0, 1

    square, core = 1, 1
    for prime, exponent in sympy.factorint(value).items():
        square *= prime ** (exponent // 2)
        if exponent % 2:
            core *= prime
    return square, core


@lru_cache(maxsize=4096)
def _smallest_prime(value: int) -> int:
    return int(min(sympy.primefactors(value)))


@total_ordering
class ExactScalar:
    """Immutable element sum(q_i * sqrt(d_i)) with d_i squarefree, ascending, and q_i nonzero."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[Tuple[int, Fraction]] = ()):
        combined: Dict[int, Fraction] = {}
        for radicand, coefficient in terms:
            if radicand < 0:
                raise DomainError(f"Negative radicand {radicand}")
            square, core = _squarefree_split(int(radicand))
            scaled = Fraction(coefficient) * square
            if scaled:
                combined[core] = combined.get(core, Fraction(0)) + scaled
        self._terms: Tuple[Tuple[int, Fraction], ...] = tuple(
            (radicand, coefficient) for radicand, coefficient in sorted(combined.items()) if coefficient
        )

    @classmethod
    def _canonical(cls, terms: Dict[int, Fraction]) -> ExactScalar:
        # radicands are already squarefree, skip re-factoring
        scalar = cls.__new__(cls)
        scalar._terms = tuple((radicand, coefficient) for radicand, coefficient in sorted(terms.items()) if coefficient)
        return scalar

    @classmethod
    def rational(cls, value: Union[int, Fraction]) -> ExactScalar:
        return cls([(1, Fraction(value))])

    @classmethod
    def sqrt(cls, value: Coercible) -> ExactScalar:
        """Square root of a nonnegative rational; square roots of irrational values are rejected."""
        if isinstance(value, ExactScalar):
            if not value.is_rational:
                raise NestedRadicalError(f"Nested radical sqrt({value}) is not representable")
            value = value.rational_part
        value = Fraction(value)
        if value < 0:
            raise DomainError(f"Square root of negative value {value}")

        # sqrt(p/q) = sqrt(p*q)/q
        return cls([(value.numerator * value.denominator, Fraction(1, value.denominator))])

    @classmethod
    def coerce(cls, value: Coercible) -> ExactScalar:
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value)
        raise TypeError(f"Can not interpret {value!r} as an exact scalar")

    @property
    def terms(self) -> Tuple[Tuple[int, Fraction], ...]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_rational(self) -> bool:
        return all(radicand == 1 for radicand, _ in self._terms)

    @property
    def rational_part(self) -> Fraction:
        for radicand, coefficient in self._terms:
            if radicand == 1:
                return coefficient
        return Fraction(0)

    def __add__(self, other: Coercible) -> ExactScalar:
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        combined = dict(self._terms)
        for radicand, coefficient in other._terms:
            combined[radicand] = combined.get(radicand, Fraction(0)) + coefficient
        return ExactScalar._canonical(combined)

    __radd__ = __add__

    def __neg__(self) -> ExactScalar:
        return ExactScalar._canonical({radicand: -coefficient for radicand, coefficient in self._terms})

    def __sub__(self, other: Coercible) -> ExactScalar:
        try:
            return self + (-ExactScalar.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other: Coercible) -> ExactScalar:
        return ExactScalar.coerce(other) - self

    def __mul__(self, other: Coercible) -> ExactScalar:
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        combined: Dict[int, Fraction] = {}
        for radicand_a, coefficient_a in self._terms:
            for radicand_b, coefficient_b in other._terms:
                # sqrt(a)*sqrt(b) = g*sqrt((a/g)*(b/g)) with g = gcd(a, b), squarefree again
                common = gcd(radicand_a, radicand_b)
                radicand = (radicand_a // common) * (radicand_b // common)
                combined[radicand] = combined.get(radicand, Fraction(0)) + coefficient_a * coefficient_b * common
        return ExactScalar._canonical(combined)

    __rmul__ = __mul__

    def _split(self, prime: int) -> Tuple[ExactScalar, ExactScalar]:
        """Write self = a + b*sqrt(prime) where neither a nor b involves sqrt(prime)."""
        without: Dict[int, Fraction] = {}
        with_prime: Dict[int, Fraction] = {}
        for radicand, coefficient in self._terms:
            if radicand % prime == 0:
                with_prime[radicand // prime] = coefficient
            else:
                without[radicand] = coefficient
        return ExactScalar._canonical(without), ExactScalar._canonical(with_prime)

    def inverse(self) -> ExactScalar:
        """Multiplicative inverse by successive conjugation, eliminating one prime radical at a time."""
        if self.is_zero:
            raise ZeroDivisionError("Inverse of exact zero")

        numerator = ExactScalar.rational(1)
        denominator: ExactScalar = self
        while not denominator.is_rational:
            radicand = next(radicand for radicand, _ in denominator._terms if radicand != 1)
            prime = _smallest_prime(radicand)
            rest, radical_part = denominator._split(prime)
            conjugate = rest - radical_part * ExactScalar.sqrt(prime)
            numerator = numerator * conjugate
            denominator = rest * rest - radical_part * radical_part * prime

        return numerator * ExactScalar.rational(1 / denominator.rational_part)

    def __truediv__(self, other: Coercible) -> ExactScalar:
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_rational:
            if other.is_zero:
                raise ZeroDivisionError("Division by exact zero")
            divisor = other.rational_part
            return ExactScalar._canonical({radicand: coefficient / divisor for radicand, coefficient in self._terms})
        return self * other.inverse()

    def __rtruediv__(self, other: Coercible) -> ExactScalar:
        return ExactScalar.coerce(other) / self

    def __pow__(self, exponent: int) -> ExactScalar:
        if exponent < 0:
            return self.inverse() ** -exponent
        result = ExactScalar.rational(1)
        for _ in range(exponent):
            result = result * self
        return result

    def enclose(self, precision: int = DEFAULT_PRECISION_BITS) -> DyadicInterval:
        enclosure = DyadicInterval.from_rational(0, precision)
        for radicand, coefficient in self._terms:
            term = DyadicInterval.from_rational(coefficient, precision)
            if radicand != 1:
                term = term * DyadicInterval.sqrt_of(radicand, precision)
            enclosure = enclosure + term
        return enclosure

    def sign(self) -> int:
        """Exact sign; zero by canonical form, otherwise by intervals of doubling precision."""
        if self.is_zero:
            return 0
        if self.is_rational:
            return 1 if self.rational_part > 0 else -1

        precision = DEFAULT_PRECISION_BITS
        while precision <= MAX_PRECISION_BITS:
            if sign := self.enclose(precision).sign():
                return sign
            logger.debug("Sign of %s undecided at %d bits, refining", self, precision)
            precision *= 2

        # a nonzero element of a real quadratic tower is bounded away from zero, refinement always decides
        raise ArithmeticError(f"Sign of {self} undecided at {MAX_PRECISION_BITS} bits")

    def compare(self, other: Coercible) -> Ordering:
        return Ordering((self - ExactScalar.coerce(other)).sign())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.rational(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __lt__(self, other: Coercible) -> bool:
        return self.compare(other) == Ordering.LESS

    def __float__(self) -> float:
        return float(self.enclose(DEFAULT_PRECISION_BITS).midpoint())

    def decimal(self, digits: int = DECIMAL_DIGITS) -> str:
        """Decimal rendering with the given number of significant digits."""
        # four extra decimal digits worth of bits beyond the rounding position
        precision = max(DEFAULT_PRECISION_BITS, 4 * (digits + 8))
        middle = self.enclose(precision).midpoint()
        context = Context(prec=digits)
        value = context.divide(Decimal(middle.numerator), Decimal(middle.denominator))
        return format(value, "f") if value.adjusted() > -7 else str(value)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts: List[str] = []
        for radicand, coefficient in self._terms:
            parts.append(str(coefficient) if radicand == 1 else f"{coefficient}*sqrt({radicand})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def to_jsonable(self) -> Dict[str, str]:
        return {"exact": str(self), "decimal": self.decimal()}


def exact_compare(a: Coercible, b: Coercible) -> Ordering:
    """Compare two exact values; EQUAL exactly when their difference canonicalizes to zero."""
    return ExactScalar.coerce(a).compare(b)


def exact_max(*values: ExactScalar) -> ExactScalar:
    best = values[0]
    for value in values[1:]:
        if exact_compare(value, best) == Ordering.GREATER:
            best = value
    return best
