# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Fiberwise sections over the unit sphere S^{n-1}, represented by polynomial lifts to R^n with exact rational
coefficients, together with exact sphere integration and the vertical operators.

All integrals use the normalized measure (total mass 1).
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from pinchcert.common.errors import DomainError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


@lru_cache(maxsize=None)
def polynomial_ring(n: int) -> PolyRing:
    """Q[v_1, ..., v_n] in lex order, so reduction modulo |v|^2 - 1 eliminates v_1^2."""
    if n < 2:
        raise DomainError(f"Fiber dimension must be >= 2, got n={n}")
    poly_ring, *_ = ring(f"v1:{n + 1}", QQ)
    return poly_ring


def to_qq(value: Union[int, Fraction]):
    value = Fraction(value)
    return QQ(int(value.numerator), int(value.denominator))


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def coordinates(n: int) -> np.ndarray:
    """The vector v = (v_1, ..., v_n) of coordinate polynomials."""
    values = np.empty(n, dtype=object)
    for index, generator in enumerate(polynomial_ring(n).gens):
        values[index] = generator
    return values


def r_squared(n: int) -> PolyElement:
    return sum((generator**2 for generator in polynomial_ring(n).gens), polynomial_ring(n).zero)


def matrix_apply(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """M v for a constant rational matrix and a vector of polynomials."""
    rows, columns = matrix.shape
    result = np.empty(rows, dtype=object)
    zero = vector[0] * 0
    for i in range(rows):
        entry = zero
        for j in range(columns):
            if matrix[i, j]:
                entry = entry + vector[j] * to_qq(matrix[i, j])
        result[i] = entry
    return result


def degree(p: PolyElement) -> int:
    """Total degree, -1 for the zero polynomial."""
    return max((sum(monomial) for monomial in p.keys()), default=-1)


def laplacian(p: PolyElement) -> PolyElement:
    return sum((p.diff(x).diff(x) for x in p.ring.gens), p.ring.zero)


def homogeneous_parts(p: PolyElement) -> Dict[int, PolyElement]:
    grouped: Dict[int, Dict[Monomial, object]] = {}
    for monomial, coefficient in p.items():
        grouped.setdefault(sum(monomial), {})[monomial] = coefficient
    return {d: p.ring.from_dict(terms) for d, terms in sorted(grouped.items())}


def harmonic_decomposition(p: PolyElement, m: int) -> Dict[int, PolyElement]:
    """
    For p homogeneous of degree m, the unique harmonic h_{m-2j} of degree m - 2j with p = sum_j |v|^{2j} h_{m-2j}.
    Uses Laplace(|v|^{2j} h) = 2j(n + 2(m-2j) + 2j - 2) |v|^{2j-2} h for h harmonic of degree m - 2j.
    """
    if m < 2 or not p:
        return {m: p}

    n = p.ring.ngens
    r2 = r_squared(n)
    lowered = harmonic_decomposition(laplacian(p), m - 2)

    parts: Dict[int, PolyElement] = {}
    remainder = p
    for j in range(1, m // 2 + 1):
        q = lowered.get(m - 2 * j)
        if q is None or not q:
            continue
        h = q * to_qq(Fraction(1, 2 * j * (n + 2 * m - 2 * j - 2)))
        parts[m - 2 * j] = h
        remainder = remainder - r2**j * h
    parts[m] = remainder
    return parts


def harmonic_projection(p: PolyElement, k: int) -> PolyElement:
    """Degree-k spherical harmonic component of the restriction of p to the sphere."""
    result = p.ring.zero
    for d, part in homogeneous_parts(p).items():
        if d >= k and (d - k) % 2 == 0:
            result = result + harmonic_decomposition(part, d).get(k, p.ring.zero)
    return result


def sphere_normal_form(p: PolyElement) -> PolyElement:
    """Canonical representative of p modulo |v|^2 - 1: equal on the sphere iff equal normal forms."""
    return p.rem(r_squared(p.ring.ngens) - 1)


def equal_on_sphere(p: PolyElement, q: PolyElement) -> bool:
    return not sphere_normal_form(p - q)


@lru_cache(maxsize=None)
def _double_factorial(value: int) -> int:
    return math.prod(range(value, 0, -2))


@lru_cache(maxsize=1 << 16)
def _moment(n: int, exponents: Monomial) -> Fraction:
    if any(exponent % 2 for exponent in exponents):
        return Fraction(0)
    numerator = math.prod(_double_factorial(exponent - 1) for exponent in exponents)
    denominator = math.prod(n + 2 * j for j in range(sum(exponents) // 2))
    return Fraction(numerator, denominator)


@dataclass(frozen=True)
class SphereMoments:
    """Normalized moments of S^{n-1}: prod (a_i - 1)!! / prod_{j < |a|/2} (n + 2j) for even a, else 0."""

    n: int

    def __call__(self, exponents: Sequence[int]) -> Fraction:
        if len(exponents) != self.n:
            raise DomainError(f"Multi-index of length {len(exponents)} on S^{self.n - 1}")
        return _moment(self.n, tuple(exponents))


class SectionKind(str, Enum):
    SCALAR = "scalar"
    VECTOR = "vector"
    SYMMETRIC = "symmetric"
    TENSOR = "tensor"

    def __str__(self) -> str:
        return self.value


_KIND_BY_RANK = {0: SectionKind.SCALAR, 1: SectionKind.VECTOR}


@dataclass(frozen=True, eq=False)
class PolySection:
    """A polynomial map R^n -> (R^n)^{rank} restricted to the sphere; values is an object array of polynomials."""

    n: int
    values: np.ndarray
    kind: SectionKind

    def __post_init__(self):
        if any(size != self.n for size in self.values.shape):
            raise DomainError(f"Section values of shape {self.values.shape} on R^{self.n}")

    @classmethod
    def of(cls, n: int, values: np.ndarray, kind: Optional[SectionKind] = None) -> PolySection:
        values = np.asarray(values, dtype=object)
        zero = polynomial_ring(n).zero
        for index in itertools.product(range(n), repeat=values.ndim):
            if not isinstance(values[index], PolyElement):
                values[index] = zero + to_qq(values[index])
        return cls(n, values, kind or _KIND_BY_RANK.get(values.ndim, SectionKind.TENSOR))

    @classmethod
    def scalar(cls, n: int, p: Union[PolyElement, int, Fraction]) -> PolySection:
        values = np.empty((), dtype=object)
        values[()] = p
        return cls.of(n, values, SectionKind.SCALAR)

    @classmethod
    def zero(cls, n: int, kind: SectionKind) -> PolySection:
        rank = {SectionKind.SCALAR: 0, SectionKind.VECTOR: 1}.get(kind, 2)
        return cls.of(n, np.zeros((n,) * rank, dtype=object), kind)

    @property
    def ring(self) -> PolyRing:
        return polynomial_ring(self.n)

    @property
    def rank(self) -> int:
        return self.values.ndim

    @property
    def scalar_value(self) -> PolyElement:
        if self.rank:
            raise DomainError(f"Section of rank {self.rank} is not scalar")
        return self.values[()]

    def entries(self) -> Iterator[Tuple[Tuple[int, ...], PolyElement]]:
        for index in itertools.product(range(self.n), repeat=self.rank):
            yield index, self.values[index]

    def map(self, function: Callable[[PolyElement], PolyElement]) -> PolySection:
        values = np.empty(self.values.shape, dtype=object)
        for index, p in self.entries():
            values[index] = function(p)
        return PolySection(self.n, values, self.kind)

    def __add__(self, other: PolySection) -> PolySection:
        if self.values.shape != other.values.shape:
            raise DomainError(f"Can not add sections of shapes {self.values.shape} and {other.values.shape}")
        values = np.empty(self.values.shape, dtype=object)
        np.add(self.values, other.values, out=values)
        return PolySection(self.n, values, self.kind)

    def __sub__(self, other: PolySection) -> PolySection:
        return self + other.scaled(-1)

    def scaled(self, factor: Union[int, Fraction]) -> PolySection:
        coefficient = to_qq(factor)
        return self.map(lambda p: p * coefficient)

    def inner(self, other: PolySection) -> PolyElement:
        """Pointwise Frobenius inner product."""
        if self.values.shape != other.values.shape:
            raise DomainError(f"Can not pair sections of shapes {self.values.shape} and {other.values.shape}")
        total = self.ring.zero
        for index, p in self.entries():
            if p:
                total = total + p * other.values[index]
        return total

    def norm_squared(self) -> Fraction:
        return sphere_integrate(self.inner(self))

    @property
    def degree(self) -> int:
        return max((degree(p) for _, p in self.entries()), default=-1)

    def is_zero_on_sphere(self) -> bool:
        return all(not sphere_normal_form(p) for _, p in self.entries())

    def equals_on_sphere(self, other: PolySection) -> bool:
        return (self - other).is_zero_on_sphere()

    def __str__(self) -> str:
        return f"PolySection({self.kind}, n={self.n}, degree={self.degree})"


def sphere_integrate(p: Union[PolySection, PolyElement]) -> Fraction:
    """Exact normalized integral over S^{n-1} by the moment table."""
    if isinstance(p, PolySection):
        p = p.scalar_value
    moments = SphereMoments(p.ring.ngens)
    return sum((to_fraction(coefficient) * moments(monomial) for monomial, coefficient in p.items()), Fraction(0))


def degree_project(f: PolySection, k: int) -> PolySection:
    """Degree-k harmonic part of every entry; the result is harmonic and homogeneous of degree k."""
    if k < 0:
        raise DomainError(f"Harmonic degree must be >= 0, got k={k}")
    return f.map(lambda p: harmonic_projection(p, k))


def harmonic_degree(f: PolySection) -> Optional[int]:
    """The k with f = degree_project(f, k) on the sphere, None when f mixes degrees; 0 for the zero section."""
    for k in range(max(f.degree, 0) + 1):
        if f.equals_on_sphere(degree_project(f, k)):
            return k
    return None


def vertical_laplacian(f: PolySection) -> PolySection:
    """Delta_V F_d = d(d+n-2) F_d - |v|^2 Laplace(F_d) on every homogeneous part; positive, k(n+k-2) on degree k."""
    r2 = r_squared(f.n)

    def apply(p: PolyElement) -> PolyElement:
        result = p.ring.zero
        for d, part in homogeneous_parts(p).items():
            result = result + part * (d * (d + f.n - 2)) - r2 * laplacian(part)
        return result

    return f.map(apply)


def vertical_gradient(f: PolySection) -> PolySection:
    """Tangential part of the Euclidean gradient, appended as the last tensor slot: grad F - <v, grad F> v."""
    v = coordinates(f.n)
    values = np.empty(f.values.shape + (f.n,), dtype=object)
    for index, p in f.entries():
        partials = [p.diff(x) for x in f.ring.gens]
        radial = sum((v[i] * partials[i] for i in range(f.n)), f.ring.zero)
        for direction in range(f.n):
            values[index + (direction,)] = partials[direction] - v[direction] * radial
    return PolySection(f.n, values, _KIND_BY_RANK.get(values.ndim, SectionKind.TENSOR))


def iota(f: PolySection, w: np.ndarray) -> PolySection:
    """Contraction of the first tensor slot with a vector of polynomials."""
    if not f.rank:
        raise DomainError("Can not contract a scalar section")
    values = np.empty(f.values.shape[1:], dtype=object)
    for rest in itertools.product(range(f.n), repeat=f.rank - 1):
        values[rest] = sum((w[i] * f.values[(i,) + rest] for i in range(f.n)), f.ring.zero)
    return PolySection(f.n, values, _KIND_BY_RANK.get(values.ndim, SectionKind.TENSOR))


def iota_v(f: PolySection) -> PolySection:
    return iota(f, coordinates(f.n))


def iota_jv(f: PolySection, j: np.ndarray) -> PolySection:
    return iota(f, matrix_apply(j, coordinates(f.n)))


def j_apply(f: PolySection, j: np.ndarray) -> PolySection:
    """J acting on the first tensor slot: J f for vector sections, J o f for matrix valued ones."""
    if not f.rank:
        raise DomainError("J does not act on scalar sections")
    values = np.empty(f.values.shape, dtype=object)
    for rest in itertools.product(range(f.n), repeat=f.rank - 1):
        column = np.array([f.values[(i,) + rest] for i in range(f.n)], dtype=object)
        applied = matrix_apply(j, column)
        for i in range(f.n):
            values[(i,) + rest] = applied[i]
    kind = SectionKind.VECTOR if f.rank == 1 else SectionKind.TENSOR
    return PolySection(f.n, values, kind)


def commutator_with(f: PolySection, j: np.ndarray) -> PolySection:
    """[J, f] = J f - f J for matrix valued f."""
    if f.rank != 2:
        raise DomainError("Commutators need matrix valued sections")
    left = j_apply(f, j).values
    transposed = PolySection(f.n, f.values.T.copy(), SectionKind.TENSOR)
    # f J = (J^T f^T)^T = -(J f^T)^T
    right = -j_apply(transposed, j).values.T
    return PolySection(f.n, left - right, SectionKind.TENSOR)


def monomial_exponents(n: int, k: int) -> Iterator[Monomial]:
    """Exponent vectors of the degree-k monomials in n variables."""
    for combination in itertools.combinations_with_replacement(range(n), k):
        yield tuple(int(count) for count in np.bincount(np.array(combination, dtype=int), minlength=n))


def harmonic_basis(n: int, k: int) -> Tuple[PolyElement, ...]:
    """Basis of the degree-k spherical harmonics: projections of the monomials whose v_1 exponent is at most 1."""
    basis = []
    for exponents in monomial_exponents(n, k):
        if exponents[0] <= 1:
            monomial = polynomial_ring(n).from_dict({exponents: QQ(1)})
            basis.append(harmonic_projection(monomial, k))
    logger.debug("Harmonic basis of degree %d on S^%d has %d elements", k, n - 1, len(basis))
    return tuple(basis)
