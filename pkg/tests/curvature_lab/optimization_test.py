# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the curvature optimization of pinchcert."""
import math

import numpy as np
import pytest

from pinchcert.common.certificate import Verdict
from pinchcert.common.errors import DomainError
from pinchcert.curvature_lab.generator import random_pinched_kahler
from pinchcert.curvature_lab.optimization import (
    STRATA,
    bishop_goldberg_bounds,
    holomorphic_extrema,
    projected_gradient_ascent,
    random_orthonormal_pairs,
    sampled_sectional,
    verify_bishop_goldberg,
)
from pinchcert.curvature_lab.tensor import complex_hyperbolic_g, g_wedge_g


class TestProjectedGradientAscent:
    """Tests for projected_gradient_ascent"""

    def test_rayleigh_quotient(self):
        # max of x^T A x on the unit sphere is the largest eigenvalue
        matrix = np.diag([1.0, 3.0, 2.0])
        result = projected_gradient_ascent(
            lambda x: float(x @ matrix @ x),
            lambda x: 2.0 * matrix @ x,
            lambda x, g: g - np.dot(g, x) * x,
            lambda x: x / np.linalg.norm(x),
            np.array([1.0, 1.0, 1.0]),
        )

        assert result.converged
        assert result.value == pytest.approx(3.0)
        assert abs(result.point[1]) == pytest.approx(1.0)


class TestHolomorphicExtrema:
    """Tests for holomorphic_extrema"""

    def test_g_is_constant(self):
        (h_min, _), (h_max, _) = holomorphic_extrema(complex_hyperbolic_g(4, exact=False), np.random.default_rng(0), 4)

        assert h_min == pytest.approx(-1.0)
        assert h_max == pytest.approx(-1.0)

    def test_needs_kahler_tensor(self):
        with pytest.raises(DomainError):
            holomorphic_extrema(g_wedge_g(4, exact=False), np.random.default_rng(0))


class TestSampling:
    """Tests for the batched evaluation on random orthonormal pairs"""

    def test_orthonormal_pairs(self):
        x, y = random_orthonormal_pairs(6, 50, np.random.default_rng(1))

        assert np.allclose(np.linalg.norm(x, axis=1), 1.0)
        assert np.allclose(np.linalg.norm(y, axis=1), 1.0)
        assert np.allclose(np.sum(x * y, axis=1), 0.0)

    def test_sampled_sectional_matches_evaluate(self):
        g = complex_hyperbolic_g(4, exact=False)
        values, xs, ys = sampled_sectional(g, 5_000, np.random.default_rng(2))

        assert values.shape == (5_000,)
        assert values[17] == pytest.approx(g.sectional(xs[17], ys[17]))
        # sectional curvature of G ranges over [-1, -1/4]
        assert values.min() >= -1.0 - 1e-12
        assert values.max() <= -0.25 + 1e-12


class TestBishopGoldberg:
    """Tests for bishop_goldberg_bounds and verify_bishop_goldberg"""

    def test_bounds_at_constant_holomorphic_curvature(self):
        # for G both bounds are attained: R(X,Y,Y,X) = -(1 + 3 cos^2 theta)/4
        for theta in STRATA:
            lower, upper = bishop_goldberg_bounds(1.0, theta)
            expected = -(1.0 + 3.0 * math.cos(theta) ** 2) / 4.0

            assert lower == pytest.approx(expected)
            assert upper == pytest.approx(expected)

    def test_bounds_are_ordered(self):
        for lam in (0.25, 0.5, 0.9):
            for theta in STRATA:
                lower, upper = bishop_goldberg_bounds(lam, theta)
                assert lower <= upper

    def test_g(self):
        report = verify_bishop_goldberg(complex_hyperbolic_g(4, exact=False), 1.0, restarts=4, seed=3, samples=500)

        assert report.h_min == pytest.approx(-1.0)
        assert report.sec_min == pytest.approx(-1.0, abs=1e-6)
        assert report.sec_max == pytest.approx(-0.25, abs=1e-6)
        assert all(stratum.holds for stratum in report.strata)
        assert len(report.strata) == len(STRATA)

    @pytest.mark.parametrize("lam", [0.5, 0.8])
    def test_random_pinched_tensor(self, lam: float):
        tensor = random_pinched_kahler(4, lam, seed=21)
        report = verify_bishop_goldberg(tensor, lam, restarts=8, seed=22, samples=2_000)
        verdicts = {certificate.claim_id: certificate.verdict for certificate in report.certificates({"lambda": lam})}

        assert verdicts["curvature.bishop-goldberg.strata"] == Verdict.HOLDS
        assert verdicts["curvature.sectional.range"] == Verdict.HOLDS
        assert verdicts["curvature.holomorphic.range"] == Verdict.HOLDS
        assert verdicts["curvature.r0.bound"] == Verdict.HOLDS
        assert ("curvature.negatively-pinched" in verdicts) == (lam >= 2.0 / 3.0)

    def test_violation_is_witnessed(self):
        # H = -2 is not 1-pinched in [-1, -1]
        doubled = complex_hyperbolic_g(4, exact=False) * 2.0
        report = verify_bishop_goldberg(doubled, 1.0, restarts=2, seed=4, samples=0)
        certificates = {certificate.claim_id: certificate for certificate in report.certificates({"lambda": 1.0})}

        assert certificates["curvature.holomorphic.range"].verdict == Verdict.FAILS
        assert certificates["curvature.holomorphic.range"].witnesses["h_min"] == pytest.approx(-2.0)
        assert certificates["curvature.bishop-goldberg.strata"].verdict == Verdict.FAILS

    def test_domain(self):
        with pytest.raises(DomainError):
            verify_bishop_goldberg(g_wedge_g(4, exact=False), 0.5)

        with pytest.raises(DomainError):
            verify_bishop_goldberg(complex_hyperbolic_g(4, exact=False), 1.5)
