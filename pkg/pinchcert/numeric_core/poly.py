# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Univariate rational polynomials in n and certificates of positivity on rays [n0, oo)."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly

from pinchcert.common.certificate import Certificate, Stopwatch
from pinchcert.common.errors import DomainError

logger = logging.getLogger(__name__)

N = sympy.Symbol("n")
"""The variable of every IntPoly, usually the real dimension."""


def _fraction(value) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


@dataclass(frozen=True)
class IntPoly:
    """Polynomial in n with exact rational coefficients, stored in ascending order without trailing zeros."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        coefficients = list(self.coefficients)
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in coefficients))

    @classmethod
    def from_expr(cls, expression: Union[sympy.Expr, str]) -> IntPoly:
        poly = Poly(sympy.sympify(expression), N, domain=QQ)
        return cls(tuple(_fraction(c) for c in reversed(poly.all_coeffs())))

    @classmethod
    def from_poly(cls, poly: Poly) -> IntPoly:
        return cls(tuple(_fraction(c) for c in reversed(poly.all_coeffs())))

    @property
    def poly(self) -> Poly:
        if not self.coefficients:
            return Poly(0, N, domain=QQ)
        return Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coefficients)], N, domain=QQ)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, n: Union[int, Fraction]) -> Fraction:
        value = Fraction(0)
        for coefficient in reversed(self.coefficients):
            value = value * n + coefficient
        return value

    def shifted(self, n0: Union[int, Fraction]) -> IntPoly:
        """Coefficients of t -> p(n0 + t)."""
        return IntPoly.from_poly(self.poly.shift(sympy.Rational(Fraction(n0).numerator, Fraction(n0).denominator)))

    def __str__(self) -> str:
        return str(self.poly.as_expr())

    def to_jsonable(self) -> str:
        return str(self)


def sign_variations(values: Sequence[Fraction]) -> int:
    """Number of sign changes in a sequence, zeros skipped."""
    signs = [value > 0 for value in values if value != 0]
    return sum(1 for left, right in zip(signs, signs[1:]) if left != right)


def sturm_root_count(p: IntPoly, n0: Fraction) -> int:
    """Number of distinct real roots of p in (n0, oo) by sign variation of the Sturm sequence."""
    sequence: List[Poly] = sympy.sturm(p.poly)
    at_n0 = [_fraction(s.eval(sympy.Rational(n0.numerator, n0.denominator))) for s in sequence]
    at_infinity = [_fraction(s.LC()) for s in sequence]
    return sign_variations(at_n0) - sign_variations(at_infinity)


def _counterexample(p: IntPoly, n0: Fraction) -> Tuple[Fraction, Fraction]:
    """
    A point n* >= n0 with p(n*) <= 0. Points strictly beyond n0 where p is negative come first, so a polynomial that
    is already nonpositive at n0 still reports where it dips below zero further out.
    """
    root_intervals = sorted(
        (_fraction(lower), _fraction(upper))
        for (lower, upper), _ in p.poly.intervals(inf=sympy.Rational(n0.numerator, n0.denominator))
    )

    candidates: List[Fraction] = []
    if root_intervals and root_intervals[0][0] > n0:
        candidates.append((n0 + root_intervals[0][0]) / 2)
    for (_, upper), (lower, _) in zip(root_intervals, root_intervals[1:]):
        candidates.append((upper + lower) / 2)
    candidates.append(root_intervals[-1][1] + 1 if root_intervals else n0 + 1)

    for candidate in candidates:
        if candidate > n0 and (value := p(candidate)) < 0:
            return candidate, value

    if (value := p(n0)) <= 0:
        return n0, value

    # p >= 0 on the ray but touches zero at a root of even multiplicity
    for lower, upper in root_intervals:
        if lower == upper:
            return lower, p(lower)
        refined = p.poly.refine_root(
            sympy.Rational(lower.numerator, lower.denominator),
            sympy.Rational(upper.numerator, upper.denominator),
            eps=sympy.Rational(1, 10**12),
        )
        midpoint = (_fraction(refined[0]) + _fraction(refined[1])) / 2
        return midpoint, p(midpoint)

    raise ArithmeticError(f"No counterexample found for {p} on [{n0}, oo)")


def poly_positive_on_ray(
    p: IntPoly, n0: Union[int, Fraction], claim_id: str = "numeric.ray-positivity", statement: Optional[str] = None
) -> Certificate:
    """
    Certify p(n) > 0 for every real n >= n0, or return a counterexample.
    First tries the shift test (all coefficients of p(n0 + t) nonnegative with positive constant term),
    then falls back to counting roots on the ray with a Sturm sequence.
    """
    if p.is_zero:
        raise DomainError("Positivity of the zero polynomial is undefined")

    n0 = Fraction(n0)
    statement = statement or f"{p} > 0 for all n >= {n0}"
    params = {"polynomial": str(p), "n0": n0}
    stopwatch = Stopwatch()

    with stopwatch.measure():
        shifted = p.shifted(n0)
        if shifted.coefficients[0] > 0 and all(c >= 0 for c in shifted.coefficients):
            method, holds, witnesses = "shift", True, {"shifted_coefficients": list(shifted.coefficients)}
        else:
            root_count = sturm_root_count(p, n0)
            holds = p(n0) > 0 and root_count == 0
            method = "sturm"
            witnesses = {"roots_on_ray": root_count, "value_at_n0": p(n0)}
            if not holds:
                n_star, value = _counterexample(p, n0)
                witnesses.update({"n_star": n_star, "value_at_n_star": value})

    logger.debug("Ray positivity of %s on [%s, oo): %s via %s", p, n0, holds, method)
    witnesses["method"] = method

    return Certificate.decide(claim_id, statement, params, holds, witnesses, runtime_ms=stopwatch.elapsed_ms)
