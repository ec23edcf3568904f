# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the dyadic interval arithmetic of pinchcert."""
from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pinchcert.common.errors import DomainError
from pinchcert.numeric_core.interval import DyadicInterval

rationals = st.fractions(min_value=-1_000, max_value=1_000, max_denominator=10_000)
precisions = st.sampled_from([24, 53, 64, 128])


class TestDyadicInterval:
    """Tests for numeric_core/interval.py"""

    def test_exact_dyadic(self):
        interval = DyadicInterval.from_rational(Fraction(3, 8), 53)

        assert interval.width() == 0
        assert interval.midpoint() == Fraction(3, 8)
        assert interval.sign() == 1

    def test_third_is_enclosed(self):
        interval = DyadicInterval.from_rational(Fraction(1, 3), 64)

        assert interval.contains(Fraction(1, 3))
        assert 0 < interval.width() <= Fraction(1, 2**64)

    def test_straddling_sign(self):
        interval = DyadicInterval.from_rational(Fraction(1, 3), 24) - DyadicInterval.from_rational(Fraction(1, 3), 24)

        assert interval.contains(0)
        assert interval.sign() == 0

    def test_sqrt_errors(self):
        with pytest.raises(DomainError):
            DyadicInterval.sqrt_of(-2, 53)

    @given(rationals, rationals, precisions)
    @settings(max_examples=200, deadline=None)
    def test_arithmetic_enclosures(self, a: Fraction, b: Fraction, precision: int):
        left, right = DyadicInterval.from_rational(a, precision), DyadicInterval.from_rational(b, precision)

        assert left.contains(a)
        assert (left + right).contains(a + b)
        assert (left - right).contains(a - b)
        assert (left * right).contains(a * b)
        assert (-left).contains(-a)

    @given(st.integers(min_value=0, max_value=10**6), precisions)
    @settings(max_examples=200, deadline=None)
    def test_sqrt_enclosure(self, radicand: int, precision: int):
        interval = DyadicInterval.sqrt_of(radicand, precision)
        lower, upper = gmpy2.mpq(interval.lower), gmpy2.mpq(interval.upper)

        assert lower >= 0
        assert lower * lower <= radicand <= upper * upper
