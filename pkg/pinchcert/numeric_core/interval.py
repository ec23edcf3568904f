# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Outward-rounded intervals with dyadic (MPFR) endpoints."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import gmpy2 as gmp

from pinchcert.common.errors import DomainError

Rational = Union[int, Fraction]


def _rounding(precision: int, round_mode):
    return gmp.context(
        precision=precision,
        emin=gmp.get_emin_min(),
        emax=gmp.get_emax_max(),
        round=round_mode,
    )


def _to_mpq(value: Rational):
    value = Fraction(value)
    return gmp.mpq(value.numerator, value.denominator)


@dataclass(frozen=True)
class DyadicInterval:
    """
    Closed interval [lower, upper] with MPFR endpoints of the given precision.
    Every operation rounds the lower endpoint down and the upper endpoint up, so the exact result of the
    operation applied to any points of the operands lies inside the result.
    """

    lower: object
    upper: object
    precision: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"Empty interval [{self.lower}, {self.upper}]")

    @classmethod
    def from_rational(cls, value: Rational, precision: int) -> DyadicInterval:
        exact = _to_mpq(value)
        with _rounding(precision, gmp.RoundDown):
            lower = gmp.mpfr(exact)
        with _rounding(precision, gmp.RoundUp):
            upper = gmp.mpfr(exact)
        return cls(lower, upper, precision)

    @classmethod
    def sqrt_of(cls, radicand: int, precision: int) -> DyadicInterval:
        if radicand < 0:
            raise DomainError(f"Square root of negative integer {radicand}")
        with _rounding(precision, gmp.RoundDown):
            lower = gmp.sqrt(gmp.mpfr(gmp.mpz(radicand)))
        with _rounding(precision, gmp.RoundUp):
            upper = gmp.sqrt(gmp.mpfr(gmp.mpz(radicand)))
        return cls(lower, upper, precision)

    def __add__(self, other: DyadicInterval) -> DyadicInterval:
        precision = max(self.precision, other.precision)
        with _rounding(precision, gmp.RoundDown):
            lower = self.lower + other.lower
        with _rounding(precision, gmp.RoundUp):
            upper = self.upper + other.upper
        return DyadicInterval(lower, upper, precision)

    def __neg__(self) -> DyadicInterval:
        return DyadicInterval(-self.upper, -self.lower, self.precision)

    def __sub__(self, other: DyadicInterval) -> DyadicInterval:
        return self + (-other)

    def __mul__(self, other: DyadicInterval) -> DyadicInterval:
        precision = max(self.precision, other.precision)
        corners = [(a, b) for a in (self.lower, self.upper) for b in (other.lower, other.upper)]
        with _rounding(precision, gmp.RoundDown):
            lower = min(a * b for a, b in corners)
        with _rounding(precision, gmp.RoundUp):
            upper = max(a * b for a, b in corners)
        return DyadicInterval(lower, upper, precision)

    def contains(self, value: Rational) -> bool:
        """Exact membership test, endpoints are compared as rationals."""
        exact = _to_mpq(value)
        return gmp.mpq(self.lower) <= exact <= gmp.mpq(self.upper)

    def sign(self) -> int:
        """1 or -1 when the interval excludes zero, 0 when it straddles or touches it."""
        if self.lower > 0:
            return 1
        if self.upper < 0:
            return -1
        return 0

    def width(self) -> Fraction:
        difference = gmp.mpq(self.upper) - gmp.mpq(self.lower)
        return Fraction(int(difference.numerator), int(difference.denominator))

    def midpoint(self) -> Fraction:
        middle = (gmp.mpq(self.upper) + gmp.mpq(self.lower)) / 2
        return Fraction(int(middle.numerator), int(middle.denominator))

    def __str__(self) -> str:
        return f"[{self.lower}, {self.upper}]@{self.precision}"
