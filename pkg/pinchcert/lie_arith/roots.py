# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Root systems of the exceptional simple Lie algebras and the representation theory needed on top of them: Weyl
dimensions, dominant conjugates, Weyl orbits and Freudenthal weight multiplicities.

Weights are tuples of coefficients over the fundamental weights (Dynkin labels); roots are tuples of coefficients over
the simple roots. Cartan matrices follow the Bourbaki numbering with A[i][j] = <alpha_i, alpha_j^vee>.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

import sympy

from pinchcert.common.errors import DomainError, NonDominantWeightError

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]
Root = Tuple[int, ...]


class Algebra(str, Enum):
    """The five exceptional simple Lie algebras."""

    G2 = "g2"
    F4 = "f4"
    E6 = "e6"
    E7 = "e7"
    E8 = "e8"

    def __str__(self) -> str:
        return self.value


ALGEBRA_DIMENSIONS: Dict[Algebra, int] = {
    Algebra.G2: 14,
    Algebra.F4: 52,
    Algebra.E6: 78,
    Algebra.E7: 133,
    Algebra.E8: 248,
}

_HALF = Fraction(1, 2)

_E8_SIMPLE_ROOTS: List[Tuple[Fraction, ...]] = [
    tuple(_HALF * s for s in (1, -1, -1, -1, -1, -1, -1, 1)),
    (1, 1, 0, 0, 0, 0, 0, 0),
    (-1, 1, 0, 0, 0, 0, 0, 0),
    (0, -1, 1, 0, 0, 0, 0, 0),
    (0, 0, -1, 1, 0, 0, 0, 0),
    (0, 0, 0, -1, 1, 0, 0, 0),
    (0, 0, 0, 0, -1, 1, 0, 0),
    (0, 0, 0, 0, 0, -1, 1, 0),
]

SIMPLE_ROOT_EMBEDDINGS: Dict[Algebra, List[Tuple]] = {
    # short root first
    Algebra.G2: [(1, -1, 0), (-2, 1, 1)],
    Algebra.F4: [(0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 0, 1), (_HALF, -_HALF, -_HALF, -_HALF)],
    Algebra.E6: _E8_SIMPLE_ROOTS[:6],
    Algebra.E7: _E8_SIMPLE_ROOTS[:7],
    Algebra.E8: _E8_SIMPLE_ROOTS,
}
"""Simple roots as vectors in a Euclidean space; E6 and E7 sit inside the E8 lattice."""


def _exceptional_e_cartan(rank: int) -> List[List[int]]:
    # Bourbaki: chain 1-3-4-...-rank, node 2 attached to node 4
    edges = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, rank)]
    cartan = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in edges:
        cartan[a - 1][b - 1] = cartan[b - 1][a - 1] = -1
    return cartan


CARTAN_MATRICES: Dict[Algebra, List[List[int]]] = {
    Algebra.G2: [[2, -1], [-3, 2]],
    Algebra.F4: [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    Algebra.E6: _exceptional_e_cartan(6),
    Algebra.E7: _exceptional_e_cartan(7),
    Algebra.E8: _exceptional_e_cartan(8),
}


def _dot(x, y) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(x, y)), Fraction(0))


def cartan_from_embedding(vectors: List[Tuple]) -> List[List[int]]:
    """Cartan matrix <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j) of embedded simple roots."""
    cartan = []
    for x in vectors:
        row = []
        for y in vectors:
            entry = 2 * _dot(x, y) / _dot(y, y)
            if entry.denominator != 1:
                raise DomainError(f"Vectors {x} and {y} do not form part of a root system")
            row.append(int(entry))
        cartan.append(row)
    return cartan


@dataclass(frozen=True)
class WeightLattice:
    """Root datum of a simple Lie algebra, with positive roots generated from the Cartan matrix."""

    algebra: Algebra
    cartan: Tuple[Tuple[int, ...], ...]
    simple_roots: Tuple[Tuple, ...]
    root_lengths: Tuple[Fraction, ...]
    """Half squared lengths d_i of the simple roots, long roots having squared length 2."""
    positive_roots: Tuple[Root, ...] = field(repr=False)
    weight_form: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)
    """Gram matrix (omega_i, omega_j) of the fundamental weights."""
    root_coordinates: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)
    """(A^T)^{-1}, mapping Dynkin labels to coefficients over the simple roots."""

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @property
    def fundamental_weights(self) -> List[Weight]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    @property
    def weyl_vector(self) -> Weight:
        return (1,) * self.rank

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    def root_to_weight(self, root: Root) -> Weight:
        return tuple(sum(c * self.cartan[i][j] for i, c in enumerate(root)) for j in range(self.rank))

    def weight_to_root(self, weight: Weight) -> Tuple[Fraction, ...]:
        """Coefficients of a weight over the simple roots."""
        return tuple(sum((row[j] * c for j, c in enumerate(weight)), Fraction(0)) for row in self.root_coordinates)

    def inner(self, x: Weight, y: Weight) -> Fraction:
        return sum(
            (self.weight_form[i][j] * a * b for i, a in enumerate(x) if a for j, b in enumerate(y) if b),
            Fraction(0),
        )

    def pairing_with_root(self, weight: Weight, root: Root) -> Fraction:
        """(weight, alpha) for alpha given over the simple roots, using (omega_i, alpha_j) = delta_ij d_j."""
        return sum((Fraction(c) * self.root_lengths[i] * weight[i] for i, c in enumerate(root)), Fraction(0))

    @property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=sum)

    @property
    def adjoint_weight(self) -> Weight:
        return self.root_to_weight(self.highest_root)

    def is_dominant(self, weight: Weight) -> bool:
        return all(c >= 0 for c in weight)

    def reflect(self, weight: Weight, i: int) -> Weight:
        """s_i(mu) = mu - <mu, alpha_i^vee> alpha_i."""
        coefficient = weight[i]
        return tuple(w - coefficient * a for w, a in zip(weight, self.cartan[i]))

    def dominant_conjugate(self, weight: Weight) -> Weight:
        while (negative := next((i for i, c in enumerate(weight) if c < 0), None)) is not None:
            weight = self.reflect(weight, negative)
        return weight

    def orbit(self, weight: Weight) -> List[Weight]:
        """Weyl group orbit, generated by simple reflections."""
        seen = {weight}
        frontier = [weight]
        while frontier:
            current = frontier.pop()
            for i in range(self.rank):
                if (image := self.reflect(current, i)) not in seen:
                    seen.add(image)
                    frontier.append(image)
        return sorted(seen, reverse=True)

    def invariant_residuals(self) -> Dict[str, bool]:
        """Cartan matrix against the embedding, root count against the dimension and 2 rho = sum of positive roots."""
        half_sum = [sum(column) for column in zip(*(self.root_to_weight(root) for root in self.positive_roots))]
        return {
            "cartan_matches_embedding": cartan_from_embedding(list(self.simple_roots))
            == [list(row) for row in self.cartan],
            "positive_root_count": len(self.positive_roots) == (ALGEBRA_DIMENSIONS[self.algebra] - self.rank) // 2,
            "weyl_vector_is_half_root_sum": all(c == 2 for c in half_sum),
        }


def _positive_roots(cartan: Tuple[Tuple[int, ...], ...]) -> Tuple[Root, ...]:
    """
    Generate positive roots by height with root strings: for a root beta and simple alpha_i with beta - p alpha_i the
    bottom of the string, beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0.
    """
    rank = len(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        next_layer = []
        for beta in layer:
            for i in range(rank):
                p = 0
                while True:
                    lowered = tuple(c - (p + 1) * (j == i) for j, c in enumerate(beta))
                    if lowered not in roots:
                        break
                    p += 1
                pairing = sum(c * cartan[j][i] for j, c in enumerate(beta))
                if p - pairing > 0:
                    raised = tuple(c + (j == i) for j, c in enumerate(beta))
                    if raised not in roots:
                        roots.add(raised)
                        next_layer.append(raised)
        layer = next_layer
    return tuple(sorted(roots, key=lambda root: (sum(root), root)))


@lru_cache(maxsize=None)
def weight_lattice(algebra: str) -> WeightLattice:
    tag = Algebra(algebra)
    cartan = tuple(tuple(row) for row in CARTAN_MATRICES[tag])
    embedding = SIMPLE_ROOT_EMBEDDINGS[tag]

    squared = [_dot(x, x) for x in embedding]
    longest = max(squared)
    root_lengths = tuple(s / longest for s in squared)

    inverse = sympy.Matrix(cartan).T.inv()
    rank = len(cartan)
    root_coordinates = tuple(
        tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(rank)) for i in range(rank)
    )
    # (omega_i, omega_j) = D (A^T)^{-1}
    weight_form = tuple(tuple(root_lengths[i] * entry for entry in row) for i, row in enumerate(root_coordinates))
    lattice = WeightLattice(
        tag,
        cartan,
        tuple(tuple(x) for x in embedding),
        root_lengths,
        _positive_roots(cartan),
        weight_form,
        root_coordinates,
    )
    logger.debug("Built %s with %d positive roots", tag, len(lattice.positive_roots))
    return lattice


def _check_weight(lattice: WeightLattice, weight: Weight):
    if len(weight) != lattice.rank:
        raise DomainError(f"{lattice.algebra} weights have {lattice.rank} coefficients, got {weight}")
    if not lattice.is_dominant(weight):
        raise NonDominantWeightError(f"Highest weight {weight} of {lattice.algebra} is not dominant")


def weyl_dimension(lattice: WeightLattice, highest_weight: Weight) -> int:
    """prod over positive roots of (lambda + rho, alpha) / (rho, alpha), exactly."""
    highest_weight = tuple(highest_weight)
    _check_weight(lattice, highest_weight)
    shifted = tuple(c + 1 for c in highest_weight)
    dimension = Fraction(1)
    for root in lattice.positive_roots:
        dimension *= lattice.pairing_with_root(shifted, root) / lattice.pairing_with_root(lattice.weyl_vector, root)
    if dimension.denominator != 1:
        raise ArithmeticError(f"Weyl dimension of {highest_weight} is not an integer: {dimension}")
    return int(dimension)


@dataclass(frozen=True)
class IrrepRecord:
    """Irreducible representation, identified by its highest weight."""

    algebra: Algebra
    highest_weight: Weight
    dimension: int

    @classmethod
    def of(cls, lattice: WeightLattice, highest_weight: Weight) -> IrrepRecord:
        return cls(lattice.algebra, tuple(highest_weight), weyl_dimension(lattice, highest_weight))

    def label(self) -> str:
        terms = [f"{c}w{i + 1}" if c != 1 else f"w{i + 1}" for i, c in enumerate(self.highest_weight) if c]
        return "+".join(terms) or "0"

    def to_jsonable(self) -> Dict:
        return {
            "algebra": str(self.algebra),
            "highest_weight": list(self.highest_weight),
            "label": self.label(),
            "dimension": self.dimension,
        }


def dominant_weights(lattice: WeightLattice, highest_weight: Weight) -> List[Weight]:
    """
    Dominant weights of V(lambda), which are exactly the dominant mu with lambda - mu a nonnegative integer combination
    of simple roots. Dominant weights have nonnegative root coordinates, so lambda - mu = sum c_i alpha_i is confined
    to the box 0 <= c_i <= (lambda)_i over the simple roots.
    """
    highest_weight = tuple(highest_weight)
    _check_weight(lattice, highest_weight)
    bounds = [int(c) for c in lattice.weight_to_root(highest_weight)]
    found = []
    for coefficients in itertools.product(*(range(bound + 1) for bound in bounds)):
        lowered = tuple(w - r for w, r in zip(highest_weight, lattice.root_to_weight(coefficients)))
        if lattice.is_dominant(lowered):
            found.append(lowered)
    rho = lattice.weyl_vector
    return sorted(found, key=lambda weight: (-lattice.inner(weight, rho), weight))


def freudenthal_multiplicities(lattice: WeightLattice, highest_weight: Weight) -> Dict[Weight, int]:
    """
    Multiplicities of the dominant weights of V(lambda) by Freudenthal's recursion
    ((lambda+rho)^2 - (mu+rho)^2) m(mu) = 2 sum_{alpha>0} sum_{k>=1} m(mu + k alpha) (mu + k alpha, alpha).
    """
    highest_weight = tuple(highest_weight)
    rho = lattice.weyl_vector
    top = tuple(c + r for c, r in zip(highest_weight, rho))
    top_norm = lattice.inner(top, top)
    roots = [(root, lattice.root_to_weight(root)) for root in lattice.positive_roots]

    multiplicities: Dict[Weight, int] = {}
    for weight in dominant_weights(lattice, highest_weight):
        if weight == highest_weight:
            multiplicities[weight] = 1
            continue
        total = Fraction(0)
        for root, root_weight in roots:
            k = 1
            while True:
                raised = tuple(c + k * r for c, r in zip(weight, root_weight))
                if (multiplicity := multiplicities.get(lattice.dominant_conjugate(raised), 0)) == 0:
                    break
                total += multiplicity * lattice.pairing_with_root(raised, root)
                k += 1
        shifted = tuple(c + r for c, r in zip(weight, rho))
        value = 2 * total / (top_norm - lattice.inner(shifted, shifted))
        if value.denominator != 1:
            raise ArithmeticError(f"Freudenthal multiplicity of {weight} in V{highest_weight} is {value}")
        if value:
            multiplicities[weight] = int(value)
    return multiplicities


def character(lattice: WeightLattice, highest_weight: Weight) -> Counter:
    """Full weight multiset of V(lambda)."""
    weights: Counter = Counter()
    for weight, multiplicity in freudenthal_multiplicities(lattice, highest_weight).items():
        for image in lattice.orbit(weight):
            weights[image] += multiplicity
    return weights
