# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the pinching constants of pinchcert."""
from fractions import Fraction

import pytest

from pinchcert.common.errors import DomainError
from pinchcert.numeric_core.exact import ExactScalar, Ordering, exact_compare
from pinchcert.thresholds.pestov import (
    LAMBDA_FINAL_LIMIT,
    AffineInLambda,
    PestovConstants,
    assemble_bc,
    assemble_lambda3_inequality,
    b_coeff,
    c_coeff,
    contraction_factor,
    lambda0,
    lambda1,
    lambda2,
    lambda3,
    lambda_final,
    lowering_factor,
    pinching_excludes,
)


class TestPestovConstants:
    """Tests for the constants in thresholds/pestov.py"""

    def test_constants(self):
        constants = PestovConstants.of(8, 2)

        assert constants.alpha == 16
        assert constants.beta == ExactScalar.sqrt(112)
        assert constants.gamma == Fraction(8 * 8 * 2, 7 * 10 * 1)
        assert constants.delta == 8

    def test_degree_one_has_no_gamma(self):
        assert PestovConstants.of(4, 1).gamma is None

    @pytest.mark.parametrize("n, k", [(3, 2), (2, 2), (6, 0)])
    def test_domain(self, n: int, k: int):
        with pytest.raises(DomainError):
            PestovConstants.of(n, k)

    def test_gamma_is_lowering_over_contraction(self):
        for n in (4, 8, 12):
            for k in range(2, 10):
                assert PestovConstants.of(n, k).gamma == lowering_factor(n, k) / contraction_factor(n, k)


class TestAffineInLambda:
    """Tests for AffineInLambda"""

    def test_arithmetic(self):
        affine = AffineInLambda.of(-2, 3) * Fraction(1, 2) + 1

        assert affine(0) == 0
        assert affine.root() == 0
        assert (affine - affine)(Fraction(7, 3)).is_zero

    def test_constant_has_no_root(self):
        with pytest.raises(DomainError):
            AffineInLambda.of(1, 0).root()


class TestThresholds:
    """Tests for the thresholds in thresholds/pestov.py"""

    @pytest.mark.parametrize("n, k", [(4, 2), (8, 3), (12, 4), (40, 12)])
    def test_lambda1_is_root_of_b(self, n: int, k: int):
        assert b_coeff(n, k).root() == lambda1(n, k)
        assert b_coeff(n, k)(lambda1(n, k)).is_zero

    @pytest.mark.parametrize("n, k", [(4, 2), (8, 3), (12, 4), (40, 12)])
    def test_lambda2_is_root_of_combination(self, n: int, k: int):
        combined = b_coeff(n, k) + c_coeff(n, k) / 2

        assert combined.root() == lambda2(n, k)

    @pytest.mark.parametrize("n, k", [(4, 2), (6, 5), (16, 4)])
    def test_assembly_matches_closed_forms(self, n: int, k: int):
        assembled_b, assembled_c = assemble_bc(n, k)

        assert assembled_b.root() == lambda1(n, k)
        assert assembled_b.slope == b_coeff(n, k).slope
        assert assembled_c.constant == c_coeff(n, k).constant

    @pytest.mark.parametrize("n", [4, 8, 12, 100])
    def test_lambda3_is_root_of_degree_two_inequality(self, n: int):
        assert assemble_lambda3_inequality(n).root() == lambda3(n)
        assert assemble_lambda3_inequality(n, include_norm_term=False).root() != lambda3(n)

    def test_final_constants(self):
        assert lambda_final(6) == Fraction(1979, 2121)
        assert ExactScalar.rational(lambda_final(6)).decimal().startswith("0.9330")
        assert lambda_final(6) - LAMBDA_FINAL_LIMIT == Fraction(417, 12 * (336 * 6 + 105))

    @pytest.mark.parametrize("m", [6, 8, 50, 200])
    def test_lambda0_below_final(self, m: int):
        assert lambda0(m) == lambda2(2 * m, 4)
        assert exact_compare(lambda0(m), lambda_final(m)) == Ordering.LESS

    def test_pinching_excludes(self):
        n, k = 8, 4
        threshold = lambda2(n, k) if lambda2(n, k) > lambda1(n, k) else lambda1(n, k)

        assert pinching_excludes(n, k, threshold + Fraction(1, 1000))
        assert not pinching_excludes(n, k, Fraction(1, 2))
