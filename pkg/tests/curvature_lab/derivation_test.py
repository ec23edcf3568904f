# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the derivation action of curvature tensors in pinchcert."""
import numpy as np
import pytest

from pinchcert.common.errors import DomainError
from pinchcert.curvature_lab.derivation import TensorSpace, derivation_extend, verify_derivation
from pinchcert.curvature_lab.generator import random_pinched_kahler
from pinchcert.curvature_lab.tensor import complex_hyperbolic_g, g_wedge_g


class TestDerivationAction:
    """Tests for DerivationAction"""

    @pytest.mark.parametrize("space", list(TensorSpace))
    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_projection(self, space: TensorSpace, p: int):
        action = derivation_extend(complex_hyperbolic_g(4, exact=False), p, space)
        rng = np.random.default_rng(p)
        projected = action.project(rng.standard_normal((4,) * p))

        assert np.allclose(action.project(projected), projected)
        assert np.linalg.norm(action.random_unit(rng)) == pytest.approx(1.0)

    @pytest.mark.parametrize("space", list(TensorSpace))
    def test_preserves_power(self, space: TensorSpace):
        action = derivation_extend(complex_hyperbolic_g(4, exact=False), 2, space)
        rng = np.random.default_rng(5)
        x, y = np.eye(4)[0], np.eye(4)[2]
        omega = action.random_unit(rng)
        image = action.apply(x, y, omega)

        assert np.allclose(action.project(image), image)

    def test_skew_adjoint(self):
        action = derivation_extend(complex_hyperbolic_g(6, exact=False), 3, TensorSpace.SYMMETRIC)
        rng = np.random.default_rng(6)
        x, y = rng.standard_normal(6), rng.standard_normal(6)
        omega, eta = action.random_unit(rng), action.random_unit(rng)

        assert action.pairing(x, y, omega, eta) == pytest.approx(-action.pairing(x, y, eta, omega))

    def test_wrong_shape(self):
        action = derivation_extend(g_wedge_g(4, exact=False), 2)

        with pytest.raises(DomainError):
            action.apply(np.eye(4)[0], np.eye(4)[1], np.zeros(4))

    @pytest.mark.parametrize("p, space", [(0, "symmetric"), (4, "symmetric"), (3, "exterior")])
    def test_domain(self, p: int, space: str):
        with pytest.raises(DomainError):
            derivation_extend(g_wedge_g(2, exact=False), p, space)


class TestVerifyDerivation:
    """Tests for verify_derivation"""

    def test_g_has_vanishing_r0_action(self):
        certificates = verify_derivation(complex_hyperbolic_g(4), 1.0, samples=20, seed=1)

        # commutator check plus three degrees for both powers
        assert len(certificates) == 7
        assert all(certificate.holds for certificate in certificates)
        for certificate in certificates[1:]:
            assert certificate.witnesses["sampled_max"] == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("lam", [0.6, 0.9])
    def test_random_pinched_tensor(self, lam: float):
        tensor = random_pinched_kahler(4, lam, seed=31)
        certificates = verify_derivation(tensor, lam, samples=100, seed=32)

        assert all(certificate.holds for certificate in certificates)
        assert {certificate.claim_id for certificate in certificates} >= {
            "curvature.derivation.commutator",
            "curvature.derivation.bound.exterior2",
            "curvature.derivation.bound.symmetric3",
        }
