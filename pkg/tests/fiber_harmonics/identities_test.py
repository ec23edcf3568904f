# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the fiberwise identities of pinchcert."""
from fractions import Fraction

import numpy as np
import pytest

from pinchcert.common.errors import DomainError, PreconditionViolationError
from pinchcert.curvature_lab.generator import random_pinched_kahler
from pinchcert.curvature_lab.tensor import ComplexStructure, complex_hyperbolic_g, g_wedge_g
from pinchcert.fiber_harmonics.identities import (
    verify_contraction_relations,
    verify_curvature_pairing_bound,
    verify_g_identity_s2,
    verify_g_identity_tm,
    verify_projector_norm,
)
from pinchcert.fiber_harmonics.polysection import PolySection, SectionKind, coordinates, j_apply, polynomial_ring
from pinchcert.fiber_harmonics.sampling import sample_admissible_section


def position_field(n: int) -> PolySection:
    """f(v) = v, of harmonic degree 1 with i_v f = 1 and i_Jv f = 0."""
    return PolySection.of(n, coordinates(n))


class TestGIdentityTM:
    """Tests for verify_g_identity_tm"""

    @pytest.mark.parametrize("n", [4, 6])
    def test_position_field(self, n: int):
        certificate = verify_g_identity_tm(n, position_field(n))

        assert certificate.holds
        assert certificate.witnesses["lhs"] == str(Fraction(n + 2, 4))

    def test_rotated_position_field(self):
        j = ComplexStructure.canonical(4).matrix

        assert verify_g_identity_tm(4, j_apply(position_field(4), j)).holds

    @pytest.mark.parametrize("k, seed", [(1, 1), (2, 2)])
    def test_sampled_sections(self, k: int, seed: int):
        sample = sample_admissible_section(4, k, SectionKind.VECTOR, seed=seed)

        assert not sample.is_empty
        assert verify_g_identity_tm(4, sample.section).holds

    def test_preconditions(self):
        constant = PolySection.of(4, np.array([1, 0, 0, 0], dtype=object))
        with pytest.raises(PreconditionViolationError):
            # i_v f = v_1 is of degree k + 1
            verify_g_identity_tm(4, constant)

        with pytest.raises(PreconditionViolationError):
            verify_g_identity_tm(4, PolySection.scalar(4, polynomial_ring(4).gens[0]))

        v1 = polynomial_ring(4).gens[0]
        mixed = PolySection.of(4, np.array([v1, v1**2, 0, 0], dtype=object))
        with pytest.raises(PreconditionViolationError):
            verify_g_identity_tm(4, mixed)

    def test_float_structure(self):
        structure = ComplexStructure.random(4, np.random.default_rng(0))

        with pytest.raises(DomainError):
            verify_g_identity_tm(4, position_field(4), structure)


class TestGIdentityS2:
    """Tests for verify_g_identity_s2"""

    def test_sampled_section(self):
        sample = sample_admissible_section(4, 2, SectionKind.SYMMETRIC, seed=7)

        assert not sample.is_empty
        assert verify_g_identity_s2(4, sample.section).holds

    def test_needs_j_commuting_section(self):
        v1, v2 = polynomial_ring(4).gens[:2]
        values = np.zeros((4, 4), dtype=object)
        values[0, 0] = v1 * v2
        u = PolySection.of(4, values, SectionKind.SYMMETRIC)

        with pytest.raises(PreconditionViolationError):
            verify_g_identity_s2(4, u)


class TestProjectorNorm:
    """Tests for verify_projector_norm"""

    def test_ratio(self):
        structure, norm = verify_projector_norm(8)

        assert structure.holds
        assert norm.holds
        assert norm.witnesses["ratio"] == "1/24"
        assert norm.witnesses["expected"] == "1/24"

    @pytest.mark.parametrize("n", [4, 6, 10])
    def test_domain(self, n: int):
        with pytest.raises(DomainError):
            verify_projector_norm(n)


class TestCurvaturePairingBound:
    """Tests for verify_curvature_pairing_bound"""

    def test_equality_for_g(self):
        # for G and f = v both sides equal -(n + 2)/4
        certificate = verify_curvature_pairing_bound(complex_hyperbolic_g(4), position_field(4), Fraction(1))

        assert certificate.holds
        assert certificate.params["exact"] is True
        assert certificate.witnesses["lhs"] == "-3/2"
        assert certificate.witnesses["slack"] == "0"

    @pytest.mark.parametrize("lam", [0.7, 0.95])
    def test_random_pinched_tensor(self, lam: float):
        tensor = random_pinched_kahler(4, lam, seed=41)
        sample = sample_admissible_section(4, 2, SectionKind.VECTOR, seed=42)
        certificate = verify_curvature_pairing_bound(tensor, sample.section, lam)

        assert certificate.params["exact"] is False
        assert certificate.holds

    def test_needs_kahler_tensor(self):
        with pytest.raises(DomainError):
            verify_curvature_pairing_bound(g_wedge_g(4), position_field(4), Fraction(1))


class TestContractionRelations:
    """Tests for verify_contraction_relations"""

    def test_position_field(self):
        certificate = verify_contraction_relations(position_field(4))

        assert certificate.holds
        assert certificate.witnesses == {"naturality": True, "pointwise": True, "integrated": True}

    def test_sampled_section(self):
        sample = sample_admissible_section(6, 2, SectionKind.VECTOR, seed=8)

        assert verify_contraction_relations(sample.section).holds

    def test_needs_vector_section(self):
        with pytest.raises(PreconditionViolationError):
            verify_contraction_relations(PolySection.scalar(4, 1))
