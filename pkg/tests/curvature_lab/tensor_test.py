# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the algebraic curvature tensors of pinchcert."""
from fractions import Fraction

import numpy as np
import pytest

from pinchcert.common.errors import CurvatureInvariantError, DomainError
from pinchcert.curvature_lab.tensor import (
    ComplexStructure,
    CurvatureTensor,
    complex_hyperbolic_g,
    complex_hyperbolic_g_from_endomorphisms,
    g_wedge_g,
    permuted,
    r0_decompose,
)


def basis(n: int, index: int) -> np.ndarray:
    vector = np.zeros(n, dtype=int)
    vector[index] = 1
    return vector


class TestComplexStructure:
    """Tests for ComplexStructure"""

    @pytest.mark.parametrize("n", [2, 4, 8])
    def test_canonical(self, n: int):
        structure = ComplexStructure.canonical(n)

        assert structure.is_exact
        assert structure.residual() == 0
        assert np.array_equal(structure(basis(n, 0)), basis(n, 1))

    def test_random_is_conjugate(self):
        structure = ComplexStructure.random(6, np.random.default_rng(3))

        assert not structure.is_exact
        assert structure.residual() < 1e-12

    @pytest.mark.parametrize("n", [0, 3, 5])
    def test_domain(self, n: int):
        with pytest.raises(DomainError):
            ComplexStructure.canonical(n)

        with pytest.raises(DomainError):
            ComplexStructure(np.zeros((3, 3)))


class TestCurvatureTensor:
    """Tests for CurvatureTensor and the tensors g^g and G"""

    def test_shape(self):
        with pytest.raises(DomainError):
            CurvatureTensor(np.zeros((2, 2, 2)))

        with pytest.raises(DomainError):
            CurvatureTensor(np.zeros((4, 4, 4, 4)), ComplexStructure.canonical(2))

    def test_g_wedge_g(self):
        wedge = g_wedge_g(5)

        assert wedge.is_exact
        assert wedge.sectional(basis(5, 0), basis(5, 3)) == -1
        # g(X,Z)g(Y,W) - g(X,W)g(Y,Z): +1 on (e1,e2,e1,e2) and -1 on (e1,e2,e2,e1)
        assert wedge.components[0, 1, 0, 1] == 1
        assert wedge.components[0, 1, 1, 0] == -1
        assert wedge.check_invariants() is wedge

    @pytest.mark.parametrize("n", [4, 6])
    def test_g_holomorphic_curvature(self, n: int):
        g = complex_hyperbolic_g(n)

        assert g.is_exact and g.is_kahler
        for index in range(n):
            assert g.holomorphic(basis(n, index)) == -1

        x = np.array([Fraction(3, 5), Fraction(4, 5)] + [Fraction(0)] * (n - 2), dtype=object)
        assert g.holomorphic(x) == -1

    def test_g_sectional_curvature(self):
        g = complex_hyperbolic_g(4)

        # totally real planes have curvature -1/4, complex lines -1
        assert g.sectional(basis(4, 0), basis(4, 2)) == Fraction(-1, 4)
        assert g.sectional(basis(4, 0), basis(4, 1)) == -1

    def test_g_invariants(self):
        g = complex_hyperbolic_g(6)

        g.check_invariants()
        assert g.symmetry_residual() == 0
        assert g.bianchi_residual() == 0
        assert g.kahler_residual() == 0

    def test_g_construction_paths_agree(self):
        assert np.array_equal(
            complex_hyperbolic_g(4).components, complex_hyperbolic_g_from_endomorphisms(4).components
        )
        assert np.allclose(
            complex_hyperbolic_g(6, exact=False).components,
            complex_hyperbolic_g_from_endomorphisms(6, exact=False).components,
        )

    def test_g_under_random_structure(self):
        structure = ComplexStructure.random(4, np.random.default_rng(11))
        g = complex_hyperbolic_g(4, structure, exact=False)
        x = np.random.default_rng(12).standard_normal(4)
        x /= np.linalg.norm(x)

        assert g.holomorphic(x) == pytest.approx(-1.0, abs=1e-12)
        g.check_invariants()

        with pytest.raises(DomainError):
            complex_hyperbolic_g(4, structure, exact=True)

    def test_endomorphism(self):
        g = complex_hyperbolic_g(4, exact=False)
        x, y, z, w = np.eye(4)[0], np.eye(4)[1], np.eye(4)[1], np.eye(4)[0]

        assert np.dot(g.endomorphism(x, y) @ z, w) == pytest.approx(g.evaluate(x, y, z, w))

    def test_broken_invariants(self):
        components = g_wedge_g(4, exact=False).components.copy()
        components[0, 1, 1, 0] += 1.0

        with pytest.raises(CurvatureInvariantError):
            CurvatureTensor(components).check_invariants()

        swapped = permuted(g_wedge_g(4, exact=False).components, "ikjl")
        with pytest.raises(CurvatureInvariantError):
            CurvatureTensor(swapped).check_invariants()

    def test_wedge_is_not_kahler(self):
        wedge = CurvatureTensor(g_wedge_g(4).components, ComplexStructure.canonical(4))

        assert wedge.kahler_residual() > 0
        with pytest.raises(CurvatureInvariantError):
            wedge.check_invariants()

    def test_arithmetic(self):
        g = complex_hyperbolic_g(4)
        doubled = g + g

        assert np.array_equal((doubled - g).components, g.components)
        assert doubled.holomorphic(basis(4, 2)) == -2
        assert (Fraction(1, 2) * doubled).holomorphic(basis(4, 2)) == -1

        with pytest.raises(DomainError):
            _ = g + complex_hyperbolic_g(6)


class TestR0Decompose:
    """Tests for the splitting R = R_0 + (1 + lambda)/2 G"""

    def test_exact_g_has_no_r0_part(self):
        r0 = r0_decompose(complex_hyperbolic_g(4), Fraction(1))

        assert r0.is_exact
        assert all(entry == 0 for entry in r0.components.flat)

    def test_float_decomposition(self):
        g = complex_hyperbolic_g(4, exact=False)
        r0 = r0_decompose(g, 0.5)

        # H_{R_0} = -1 + 3/4
        assert r0.holomorphic(np.eye(4)[0]) == pytest.approx(-0.25)

    def test_needs_kahler_tensor(self):
        with pytest.raises(DomainError):
            r0_decompose(g_wedge_g(4), Fraction(1, 2))
