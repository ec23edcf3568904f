# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Random fiberwise sections subject to the algebraic constraints of complex normal twisted conformal Killing tensors,
and the quaternionic projector family that witnesses the norm relation for contractions.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Flag, auto
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from pinchcert.common.constants import MAX_EXACT_UNKNOWNS
from pinchcert.common.errors import DomainError
from pinchcert.curvature_lab.tensor import ComplexStructure
from pinchcert.fiber_harmonics.polysection import (
    PolySection,
    SectionKind,
    commutator_with,
    coordinates,
    degree_project,
    harmonic_basis,
    iota_jv,
    iota_v,
    matrix_apply,
    monomial_exponents,
    polynomial_ring,
    r_squared,
    to_fraction,
    to_qq,
)

logger = logging.getLogger(__name__)

COEFFICIENT_RANGE: int = 3
"""Random kernel combinations use integer weights in [-COEFFICIENT_RANGE, COEFFICIENT_RANGE]."""


class Constraint(Flag):
    """Fiberwise constraints on a section f of harmonic degree k."""

    NONE = 0
    CONTRACTION = auto()
    """i_v f has no harmonic component of degree k + 1."""
    J_CONTRACTION = auto()
    """i_Jv f has no harmonic component of degree k + 1 (vector sections)."""
    DOUBLE_CONTRACTION = auto()
    """i_v i_v f has no harmonic component of degree k (matrix sections)."""
    COMMUTES_WITH_J = auto()
    """[J, f] = 0 (matrix sections)."""

    @classmethod
    def default_for(cls, kind: SectionKind) -> Constraint:
        if kind == SectionKind.VECTOR:
            return cls.CONTRACTION | cls.J_CONTRACTION
        return cls.CONTRACTION | cls.DOUBLE_CONTRACTION | cls.COMMUTES_WITH_J


@dataclass
class AdmissibleSample:
    """A sampled section, or None when the constrained space is zero; kernel_dimension is None if not computed."""

    section: Optional[PolySection]
    kernel_dimension: Optional[int]
    strategy: str

    @property
    def is_empty(self) -> bool:
        return self.section is None


def constraint_residuals(f: PolySection, k: int, constraints: Constraint, j: np.ndarray) -> Dict[str, bool]:
    """Which of the requested constraints hold exactly."""
    checks: Dict[str, bool] = {"harmonic": f.equals_on_sphere(degree_project(f, k))}
    if Constraint.CONTRACTION in constraints:
        checks["contraction"] = degree_project(iota_v(f), k + 1).is_zero_on_sphere()
    if Constraint.J_CONTRACTION in constraints:
        checks["j_contraction"] = degree_project(iota_jv(f, j), k + 1).is_zero_on_sphere()
    if Constraint.DOUBLE_CONTRACTION in constraints:
        checks["double_contraction"] = degree_project(iota_v(iota_v(f)), k).is_zero_on_sphere()
    if Constraint.COMMUTES_WITH_J in constraints:
        checks["commutes_with_j"] = all(not p for _, p in commutator_with(f, j).entries())
    return checks


def _hermitian_basis(n: int) -> List[np.ndarray]:
    """Real forms of a basis of Hermitian (n/2) x (n/2) matrices: the symmetric matrices commuting with canonical J."""
    rotation = np.array([[0, -1], [1, 0]], dtype=int)
    basis = []
    for a in range(n // 2):
        for b in range(a, n // 2):
            real_part = np.zeros((n, n), dtype=int)
            real_part[2 * a : 2 * a + 2, 2 * b : 2 * b + 2] = np.eye(2, dtype=int)
            real_part[2 * b : 2 * b + 2, 2 * a : 2 * a + 2] = np.eye(2, dtype=int)
            basis.append(real_part)
            if a != b:
                imaginary_part = np.zeros((n, n), dtype=int)
                imaginary_part[2 * a : 2 * a + 2, 2 * b : 2 * b + 2] = rotation
                imaginary_part[2 * b : 2 * b + 2, 2 * a : 2 * a + 2] = rotation.T
                basis.append(imaginary_part)
    return basis


def _symmetric_commuting_basis(j: np.ndarray, commuting: bool) -> List[np.ndarray]:
    """Integer basis of symmetric matrices, restricted to those commuting with J if requested."""
    n = j.shape[0]
    if commuting and np.array_equal(j, ComplexStructure.canonical(n).matrix):
        return _hermitian_basis(n)

    basis = []
    for a in range(n):
        for b in range(a, n):
            unit = np.zeros((n, n), dtype=int)
            unit[a, b] = unit[b, a] = 1
            basis.append(unit)
    if not commuting:
        return basis

    # H -> H - JHJ maps onto the J-commuting symmetric matrices; keep an independent spanning subset
    images = [unit - j @ unit @ j for unit in basis]
    stacked = sympy.Matrix([list(image.flatten()) for image in images])
    _, pivots = stacked.T.rref()
    return [images[pivot] for pivot in pivots]


def _unknowns(n: int, k: int, kind: SectionKind, j: np.ndarray, constraints: Constraint) -> List[PolySection]:
    harmonics = harmonic_basis(n, k)
    if kind == SectionKind.VECTOR:
        shapes = []
        for a in range(n):
            unit = np.zeros(n, dtype=int)
            unit[a] = 1
            shapes.append(unit)
    elif kind == SectionKind.SYMMETRIC:
        shapes = _symmetric_commuting_basis(j, Constraint.COMMUTES_WITH_J in constraints)
    else:
        raise DomainError(f"Admissible sections are vector or symmetric valued, got {kind}")

    unknowns = []
    for h in harmonics:
        for shape in shapes:
            values = np.empty(shape.shape, dtype=object)
            for index in np.ndindex(*shape.shape):
                values[index] = h * to_qq(shape[index])
            unknowns.append(PolySection(n, values, kind))
    return unknowns


def _constraint_images(f: PolySection, k: int, constraints: Constraint, j: np.ndarray) -> List[PolyElement]:
    images: List[PolyElement] = []
    if Constraint.CONTRACTION in constraints:
        images.extend(p for _, p in degree_project(iota_v(f), k + 1).entries())
    if Constraint.J_CONTRACTION in constraints and f.kind == SectionKind.VECTOR:
        images.extend(p for _, p in degree_project(iota_jv(f, j), k + 1).entries())
    if Constraint.DOUBLE_CONTRACTION in constraints and f.kind == SectionKind.SYMMETRIC:
        images.extend(p for _, p in degree_project(iota_v(iota_v(f)), k).entries())
    return images


def _nullspace(columns: List[Dict[Tuple[int, tuple], Fraction]], unknown_count: int) -> List[List[Fraction]]:
    """Basis of the rational nullspace of the matrix given column by column as sparse dicts."""
    rows_index: Dict[Tuple[int, tuple], int] = {}
    for column in columns:
        for key in column:
            rows_index.setdefault(key, len(rows_index))
    if not rows_index:
        return [[Fraction(int(i == free)) for i in range(unknown_count)] for free in range(unknown_count)]

    sparse: Dict[int, Dict[int, object]] = {}
    for column_index, column in enumerate(columns):
        for key, value in column.items():
            sparse.setdefault(rows_index[key], {})[column_index] = to_qq(value)
    reduced, pivots = DomainMatrix(sparse, (len(rows_index), unknown_count), QQ).rref()
    reduced_rows = reduced.to_Matrix()

    basis = []
    for free in (column for column in range(unknown_count) if column not in pivots):
        vector = [Fraction(0)] * unknown_count
        vector[free] = Fraction(1)
        for row, pivot in enumerate(pivots):
            entry = reduced_rows[row, free]
            vector[pivot] = -Fraction(int(entry.p), int(entry.q))
        basis.append(vector)
    return basis


def _combine(sections: Sequence[PolySection], weights: Sequence[Fraction], n: int, kind: SectionKind) -> PolySection:
    total = PolySection.zero(n, kind)
    for section, weight in zip(sections, weights):
        if weight:
            total = total + section.scaled(weight)
    return total


def _random_weights(rng: np.random.Generator, count: int) -> List[int]:
    while True:
        weights = [int(w) for w in rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=count)]
        if any(weights):
            return weights


def _exact_sample(
    n: int, k: int, kind: SectionKind, constraints: Constraint, j: np.ndarray, rng: np.random.Generator
) -> AdmissibleSample:
    unknowns = _unknowns(n, k, kind, j, constraints)
    columns = []
    for index, unknown in enumerate(unknowns):
        column: Dict[Tuple[int, tuple], Fraction] = {}
        for image_index, image in enumerate(_constraint_images(unknown, k, constraints, j)):
            for monomial, coefficient in image.items():
                column[(image_index, monomial)] = to_fraction(coefficient)
        columns.append(column)

    kernel = _nullspace(columns, len(unknowns))
    logger.debug(
        "Kernel of the constraints in degree %d on S^%d: %d of %d unknowns", k, n - 1, len(kernel), len(unknowns)
    )
    if not kernel:
        return AdmissibleSample(None, 0, "exact")

    weights = _random_weights(rng, len(kernel))
    coefficients = [
        sum((w * vector[i] for w, vector in zip(weights, kernel)), Fraction(0)) for i in range(len(unknowns))
    ]
    return AdmissibleSample(_combine(unknowns, coefficients, n, kind), len(kernel), "exact")


def _random_skew(n: int, rng: np.random.Generator) -> np.ndarray:
    upper = np.triu(rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=(n, n)), 1)
    return upper - upper.T


def _random_symmetric(n: int, rng: np.random.Generator) -> np.ndarray:
    upper = np.triu(rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1, size=(n, n)))
    return upper + np.triu(upper, 1).T


def _as_fractions(matrix) -> np.ndarray:
    return np.array([[Fraction(int(entry.p), int(entry.q)) for entry in row] for row in matrix.tolist()], dtype=object)


def _random_unitary(j: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Rational orthogonal Q commuting with J, the Cayley transform (I - K)(I + K)^-1 of a J-commuting skew K."""
    n = j.shape[0]
    skew = _random_skew(n, rng)
    commuting = sympy.Matrix(skew - j @ skew @ j) / 2
    identity = sympy.eye(n)
    return _as_fractions((identity - commuting) * (identity + commuting).inv())


def _projector_family(j: np.ndarray, a: np.ndarray) -> PolySection:
    """pi_A(v) = (Av)(Av)^T + (JAv)(JAv)^T."""
    n = j.shape[0]
    av = matrix_apply(a, coordinates(n))
    jav = matrix_apply(j, av)
    values = np.empty((n, n), dtype=object)
    for row in range(n):
        for column in range(n):
            values[row, column] = av[row] * av[column] + jav[row] * jav[column]
    return PolySection(n, values, SectionKind.SYMMETRIC)


def _complex_normal_projector(n: int, j: np.ndarray) -> np.ndarray:
    """P = |v|^2 I - v v^T - (Jv)(Jv)^T, which kills v and Jv and commutes with J."""
    v = coordinates(n)
    jv = matrix_apply(j, v)
    r2 = r_squared(n)
    values = np.empty((n, n), dtype=object)
    for row in range(n):
        for column in range(n):
            values[row, column] = (r2 if row == column else r2 * 0) - v[row] * v[column] - jv[row] * jv[column]
    return values


def _random_polynomial(n: int, d: int, rng: np.random.Generator) -> PolyElement:
    poly_ring = polynomial_ring(n)
    terms = {}
    for exponents in monomial_exponents(n, d):
        if coefficient := int(rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1)):
            terms[exponents] = QQ(coefficient)
    return poly_ring.from_dict(terms) if terms else poly_ring.from_dict({tuple([d] + [0] * (n - 1)): QQ(1)})


def _polynomial_product(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Matrix product of object arrays of polynomials; right may be a vector."""
    zero = left.flat[0] * 0
    rows, inner = left.shape
    columns = right.shape[1] if right.ndim == 2 else None
    result = np.empty((rows,) if columns is None else (rows, columns), dtype=object)
    for index in np.ndindex(*result.shape):
        row, column = index[0], index[1:]
        result[index] = sum((left[row, a] * right[(a,) + column] for a in range(inner)), zero)
    return result


def _constructive_sample(
    n: int, k: int, kind: SectionKind, j: np.ndarray, rng: np.random.Generator
) -> Optional[PolySection]:
    if kind == SectionKind.VECTOR:
        if k == 1:
            # A = (S + JSJ)/2 is skew and anticommutes with J, so <v, Av> = <Jv, Av> = 0
            skew = _random_skew(n, rng)
            a = np.vectorize(Fraction, otypes=[object])(skew + j @ skew @ j) / 2
            return PolySection(n, matrix_apply(a, coordinates(n)), SectionKind.VECTOR)
        if k >= 2:
            w = np.empty(n, dtype=object)
            for index in range(n):
                w[index] = _random_polynomial(n, k - 2, rng)
            values = _polynomial_product(_complex_normal_projector(n, j), w)
            return degree_project(PolySection(n, values, SectionKind.VECTOR), k)
        return None

    if k == 2:
        if n % 4:
            return None
        _, quaternion = quaternionic_structure(n)
        total = PolySection.zero(n, SectionKind.SYMMETRIC)
        for _ in range(2):
            unitary = _random_unitary(j, rng)
            a = unitary @ quaternion.astype(object) @ unitary.T
            total = total + _projector_family(j, a).scaled(int(rng.integers(1, COEFFICIENT_RANGE + 1)))
        return degree_project(total, 2)
    if k >= 4:
        # P M P with M symmetric, J-commuting and of degree k - 4
        p = _complex_normal_projector(n, j)
        middle = PolySection.zero(n, SectionKind.SYMMETRIC).values
        for _ in range(2):
            symmetric = _random_symmetric(n, rng)
            commuting = symmetric - j @ symmetric @ j
            scalar = _random_polynomial(n, k - 4, rng)
            for index in np.ndindex(n, n):
                middle[index] = middle[index] + scalar * to_qq(int(commuting[index]))
        sandwich = _polynomial_product(_polynomial_product(p, middle), p)
        return degree_project(PolySection(n, sandwich, SectionKind.SYMMETRIC), k)
    return None


def sample_admissible_section(
    n: int,
    k: int,
    kind: SectionKind = SectionKind.SYMMETRIC,
    constraints: Optional[Constraint] = None,
    seed: Optional[int] = None,
    complex_structure: Optional[ComplexStructure] = None,
    max_exact_unknowns: int = MAX_EXACT_UNKNOWNS,
) -> AdmissibleSample:
    """
    Random section of harmonic degree k with the requested constraints. Small problems are solved exactly through
    the rational nullspace of the constraint map; larger ones use explicit constructions, re-checked exactly.
    """
    if n < 2 or n % 2:
        raise DomainError(f"Real dimension must be even and >= 2, got n={n}")
    if k < 0:
        raise DomainError(f"Harmonic degree must be >= 0, got k={k}")

    constraints = Constraint.default_for(kind) if constraints is None else constraints
    j = (complex_structure or ComplexStructure.canonical(n)).matrix
    rng = np.random.default_rng(seed)

    harmonic_count = len(harmonic_basis(n, k))
    if kind == SectionKind.VECTOR:
        shape_count = n
    else:
        shape_count = len(_symmetric_commuting_basis(j, Constraint.COMMUTES_WITH_J in constraints))
    if harmonic_count * shape_count <= max_exact_unknowns:
        return _exact_sample(n, k, kind, constraints, j, rng)

    logger.info("%d unknowns exceed the exact limit, sampling constructively", harmonic_count * shape_count)
    section = _constructive_sample(n, k, kind, j, rng)
    if section is None:
        logger.warning("No constructive sampler for %s sections of degree %d in dimension %d", kind, k, n)
        return AdmissibleSample(None, None, "constructive-unavailable")

    failed = [name for name, holds in constraint_residuals(section, k, constraints, j).items() if not holds]
    if failed:
        logger.warning("Constructed section violates %s, discarding it", failed)
        return AdmissibleSample(None, None, "constructive-rejected")
    return AdmissibleSample(section, None, "constructive")


def quaternionic_structure(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """(J, A) on R^n = H^{n/4}: J canonical, A orthogonal with A^2 = -Id and AJ = -JA."""
    if n % 4:
        raise DomainError(f"A quaternionic structure needs n divisible by 4, got n={n}")
    j = ComplexStructure.canonical(n).matrix
    block = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=int)
    a = np.kron(np.eye(n // 4, dtype=int), block)
    return j, a


def quaternionic_projector(n: int) -> PolySection:
    """pi(v) = (Av)(Av)^T + (JAv)(JAv)^T, a rank-2 projector field on the sphere with i_v pi = i_Jv pi = 0."""
    j, a = quaternionic_structure(n)
    return _projector_family(j, a)
