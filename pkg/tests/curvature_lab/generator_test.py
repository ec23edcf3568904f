# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the random pinched Kaehler curvature tensors of pinchcert."""
import numpy as np
import pytest

from pinchcert.common.errors import CalibrationError, DomainError
from pinchcert.curvature_lab.generator import (
    INVARIANT_TOLERANCE,
    bianchi_projection,
    calibrate,
    kahler_projection,
    project_to_kahler_curvature,
    random_pinched_kahler,
    random_s2_lambda2,
)
from pinchcert.curvature_lab.optimization import holomorphic_extrema
from pinchcert.curvature_lab.tensor import ComplexStructure, CurvatureTensor


class TestProjections:
    """Tests for the projections onto Kaehler curvature tensors"""

    def test_random_s2_lambda2_symmetries(self):
        tensor = CurvatureTensor(random_s2_lambda2(4, np.random.default_rng(0)))

        assert tensor.symmetry_residual() < 1e-14

    def test_bianchi_projection_is_idempotent(self):
        components = random_s2_lambda2(4, np.random.default_rng(1))
        projected = bianchi_projection(components)

        assert CurvatureTensor(projected).bianchi_residual() < 1e-12
        assert np.allclose(bianchi_projection(projected), projected)

    def test_projection_yields_kahler_tensor(self):
        structure = ComplexStructure.canonical(6)
        components = project_to_kahler_curvature(
            random_s2_lambda2(6, np.random.default_rng(2)), structure.as_float()
        )

        CurvatureTensor(components, structure).check_invariants(INVARIANT_TOLERANCE)
        assert np.allclose(kahler_projection(components, structure.as_float()), components)


class TestCalibrate:
    """Tests for calibrate"""

    def test_affine_map(self):
        calibration = calibrate(-3.0, 1.0, 0.5)

        # H = scale * H' - shift
        assert calibration.scale * -3.0 - calibration.shift == pytest.approx(-1.0)
        assert calibration.scale * 1.0 - calibration.shift == pytest.approx(-0.5)

    def test_lambda_one_is_g(self):
        calibration = calibrate(-3.0, 1.0, 1.0)

        assert (calibration.scale, calibration.shift) == (0.0, 1.0)

    def test_degenerate_range(self):
        with pytest.raises(CalibrationError):
            calibrate(0.5, 0.5, 0.75)


class TestRandomPinchedKahler:
    """Tests for random_pinched_kahler"""

    @pytest.mark.parametrize("n, lam", [(4, 0.9), (4, 0.5), (6, 0.75)])
    def test_holomorphic_range(self, n: int, lam: float):
        tensor = random_pinched_kahler(n, lam, seed=n)

        (h_min, _), (h_max, _) = holomorphic_extrema(tensor, np.random.default_rng(100 + n), restarts=32)
        assert h_min >= -1.0 - 1e-6
        assert h_max <= -lam + 1e-6
        # the calibration stretches the measured range onto the full interval
        assert h_min == pytest.approx(-1.0, abs=1e-4)
        assert h_max == pytest.approx(-lam, abs=1e-4)

    def test_seed_reproducibility(self):
        first = random_pinched_kahler(4, 0.8, seed=7)
        second = random_pinched_kahler(4, 0.8, seed=7)

        assert np.array_equal(first.components, second.components)

    def test_lambda_one_is_g(self):
        tensor = random_pinched_kahler(4, 1.0, seed=1)
        x = np.random.default_rng(5).standard_normal(4)
        x /= np.linalg.norm(x)

        assert tensor.holomorphic(x) == pytest.approx(-1.0, abs=1e-12)

    def test_random_complex_structure(self):
        structure = ComplexStructure.random(4, np.random.default_rng(9))
        tensor = random_pinched_kahler(4, 0.9, seed=9, complex_structure=structure)

        assert tensor.complex_structure is structure
        assert tensor.kahler_residual() < 1e-10

    @pytest.mark.parametrize("n, lam", [(5, 0.9), (2, 0.9), (4, 0.0), (4, 1.5)])
    def test_domain(self, n: int, lam: float):
        with pytest.raises(DomainError):
            random_pinched_kahler(n, lam)
