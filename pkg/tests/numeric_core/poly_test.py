# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the ray positivity certificates of pinchcert."""
from fractions import Fraction
from typing import List

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pinchcert.common.errors import DomainError
from pinchcert.numeric_core.poly import N, IntPoly, poly_positive_on_ray, sign_variations, sturm_root_count


def evaluate(coefficients: List[int], n: int) -> int:
    value = 0
    for coefficient in reversed(coefficients):
        value = value * n + coefficient
    return value


class TestIntPoly:
    """Tests for numeric_core/poly.py"""

    def test_from_expr(self):
        p = IntPoly.from_expr((N - 2) * (N + 4))

        assert p.coefficients == (Fraction(-8), Fraction(2), Fraction(1))
        assert p.degree == 2
        assert p(2) == 0
        assert p.shifted(2).coefficients == (Fraction(0), Fraction(6), Fraction(1))

    def test_zero_polynomial(self):
        zero = IntPoly((Fraction(0), Fraction(0)))

        assert zero.is_zero
        with pytest.raises(DomainError):
            poly_positive_on_ray(zero, 0)

    def test_sign_variations(self):
        assert sign_variations([Fraction(1), Fraction(0), Fraction(-2), Fraction(3)]) == 2
        assert sign_variations([]) == 0

    def test_sturm_root_count(self):
        p = IntPoly.from_expr((N - 1) * (N - 3) * (N - 5))

        assert sturm_root_count(p, Fraction(0)) == 3
        assert sturm_root_count(p, Fraction(2)) == 2
        assert sturm_root_count(p, Fraction(6)) == 0

    def test_shift_certificate(self):
        # (n-4)(n+2) < (n-2)(n+4) for every n >= 1
        certificate = poly_positive_on_ray(IntPoly.from_expr((N - 2) * (N + 4) - (N - 4) * (N + 2)), 1)

        assert certificate.holds
        assert certificate.witnesses["method"] == "shift"

    def test_sturm_certificate(self):
        # positive on [0, oo) but with a negative coefficient after shifting
        certificate = poly_positive_on_ray(IntPoly.from_expr(N**2 - N + 1), 0)

        assert certificate.holds
        assert certificate.witnesses["method"] == "sturm"
        assert certificate.witnesses["roots_on_ray"] == 0

    def test_counterexample(self):
        certificate = poly_positive_on_ray(IntPoly.from_expr((N - 10) * (N - 12)), 0)

        assert not certificate.holds
        n_star = Fraction(certificate.witnesses["n_star"])
        assert n_star >= 0
        assert Fraction(certificate.witnesses["value_at_n_star"]) < 0
        assert 10 < n_star < 12

    def test_counterexample_beyond_nonpositive_start(self):
        certificate = poly_positive_on_ray(IntPoly.from_expr(N - 20), 10)

        assert not certificate.holds
        assert 10 < Fraction(certificate.witnesses["n_star"]) < 20
        assert Fraction(certificate.witnesses["value_at_n_star"]) < 0

    def test_counterexample_with_root_at_start(self):
        certificate = poly_positive_on_ray(IntPoly.from_expr((N - 10) * (N - 12)), 10)

        assert not certificate.holds
        assert Fraction(certificate.witnesses["n_star"]) == 11
        assert Fraction(certificate.witnesses["value_at_n_star"]) == -1

    def test_counterexample_for_double_root(self):
        certificate = poly_positive_on_ray(IntPoly.from_expr((N - 3) ** 2), 0)

        assert not certificate.holds
        assert Fraction(certificate.witnesses["n_star"]) == 3
        assert Fraction(certificate.witnesses["value_at_n_star"]) == 0

    @given(
        st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=7),
        st.integers(min_value=-5, max_value=20),
    )
    @settings(max_examples=200, deadline=None)
    def test_ray_positivity_against_roots(self, coefficients: List[int], n0: int):
        p = IntPoly(tuple(Fraction(c) for c in coefficients))
        assume(not p.is_zero)

        certificate = poly_positive_on_ray(p, n0)
        roots_on_ray = p.degree > 0 and any(root >= n0 for root in sympy.real_roots(p.poly))

        assert certificate.holds == (p(n0) > 0 and not roots_on_ray)

        integer_values = [evaluate(coefficients, n) for n in range(n0, n0 + 10**4 + 1)]
        if certificate.holds:
            assert all(value > 0 for value in integer_values)
        else:
            assert Fraction(certificate.witnesses["n_star"]) >= n0
            assert Fraction(certificate.witnesses["value_at_n_star"]) <= 0
        if any(value <= 0 for value in integer_values):
            assert not certificate.holds
