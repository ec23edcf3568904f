# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the root systems and Weyl characters of pinchcert."""
from fractions import Fraction

import pytest

from pinchcert.common.errors import DomainError, NonDominantWeightError
from pinchcert.lie_arith.roots import (
    ALGEBRA_DIMENSIONS,
    SIMPLE_ROOT_EMBEDDINGS,
    Algebra,
    IrrepRecord,
    cartan_from_embedding,
    character,
    dominant_weights,
    freudenthal_multiplicities,
    weight_lattice,
    weyl_dimension,
)


class TestWeightLattice:
    """Tests for WeightLattice"""

    @pytest.mark.parametrize("algebra", list(Algebra))
    def test_invariants(self, algebra: Algebra):
        lattice = weight_lattice(algebra)

        assert all(lattice.invariant_residuals().values())
        assert lattice.dimension == ALGEBRA_DIMENSIONS[algebra]

    @pytest.mark.parametrize("algebra, positive_roots", [("g2", 6), ("f4", 24), ("e6", 36), ("e7", 63), ("e8", 120)])
    def test_positive_roots(self, algebra: str, positive_roots: int):
        assert len(weight_lattice(algebra).positive_roots) == positive_roots

    def test_g2_root_lengths(self):
        lattice = weight_lattice(Algebra.G2)

        # short root first
        assert lattice.root_lengths == (Fraction(1, 3), Fraction(1))
        assert cartan_from_embedding(SIMPLE_ROOT_EMBEDDINGS[Algebra.G2]) == [[2, -1], [-3, 2]]

    def test_reflections(self):
        lattice = weight_lattice(Algebra.E6)
        weight = (1, 0, 0, 0, 0, 0)

        assert lattice.reflect(lattice.reflect(weight, 0), 0) == weight
        assert lattice.dominant_conjugate(lattice.reflect(weight, 0)) == weight
        # the 27 is minuscule
        assert len(lattice.orbit(weight)) == 27

    def test_weyl_vector_pairs_to_one_with_simple_roots(self):
        lattice = weight_lattice(Algebra.F4)

        for i in range(lattice.rank):
            root = tuple(int(i == j) for j in range(lattice.rank))
            assert lattice.pairing_with_root(lattice.weyl_vector, root) == lattice.root_lengths[i]

    def test_unknown_algebra(self):
        with pytest.raises(ValueError):
            weight_lattice("e9")


class TestWeylDimension:
    """Tests for weyl_dimension"""

    @pytest.mark.parametrize(
        "algebra, weight, dimension",
        [
            ("g2", (1, 0), 7),
            ("g2", (0, 1), 14),
            ("g2", (2, 0), 27),
            ("f4", (0, 0, 0, 1), 26),
            ("f4", (1, 0, 0, 0), 52),
            ("e6", (1, 0, 0, 0, 0, 0), 27),
            ("e6", (0, 0, 0, 0, 0, 1), 27),
            ("e6", (0, 1, 0, 0, 0, 0), 78),
            ("e7", (0, 0, 0, 0, 0, 0, 1), 56),
            ("e7", (1, 0, 0, 0, 0, 0, 0), 133),
            ("e8", (0, 0, 0, 0, 0, 0, 0, 1), 248),
            ("e8", (1, 0, 0, 0, 0, 0, 0, 0), 3875),
        ],
    )
    def test_known_dimensions(self, algebra: str, weight: tuple, dimension: int):
        assert weyl_dimension(weight_lattice(algebra), weight) == dimension

    @pytest.mark.parametrize("algebra", list(Algebra))
    def test_adjoint(self, algebra: Algebra):
        lattice = weight_lattice(algebra)

        assert weyl_dimension(lattice, lattice.adjoint_weight) == ALGEBRA_DIMENSIONS[algebra]
        assert weyl_dimension(lattice, lattice.zero) == 1

    def test_domain(self):
        lattice = weight_lattice(Algebra.G2)

        with pytest.raises(NonDominantWeightError):
            weyl_dimension(lattice, (-1, 1))

        with pytest.raises(DomainError):
            weyl_dimension(lattice, (1, 0, 0))

    def test_irrep_record(self):
        record = IrrepRecord.of(weight_lattice(Algebra.E6), (0, 0, 0, 0, 0, 1))

        assert record.dimension == 27
        assert record.label() == "w6"
        assert record.to_jsonable() == {
            "algebra": "e6",
            "highest_weight": [0, 0, 0, 0, 0, 1],
            "label": "w6",
            "dimension": 27,
        }
        assert IrrepRecord.of(weight_lattice(Algebra.G2), (2, 1)).label() == "2w1+w2"


class TestCharacters:
    """Tests for the Freudenthal multiplicities and full characters"""

    def test_g2_seven(self):
        lattice = weight_lattice(Algebra.G2)

        assert dominant_weights(lattice, (1, 0)) == [(1, 0), (0, 0)]
        assert freudenthal_multiplicities(lattice, (1, 0)) == {(1, 0): 1, (0, 0): 1}

    @pytest.mark.parametrize("algebra", [Algebra.G2, Algebra.F4, Algebra.E6])
    def test_adjoint_zero_weight_has_rank_multiplicity(self, algebra: Algebra):
        lattice = weight_lattice(algebra)

        assert freudenthal_multiplicities(lattice, lattice.adjoint_weight)[lattice.zero] == lattice.rank

    @pytest.mark.parametrize(
        "algebra, weight", [("g2", (1, 0)), ("g2", (0, 1)), ("f4", (0, 0, 0, 1)), ("e6", (1, 0, 0, 0, 0, 0))]
    )
    def test_character_size(self, algebra: str, weight: tuple):
        lattice = weight_lattice(algebra)

        assert sum(character(lattice, weight).values()) == weyl_dimension(lattice, weight)
