# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Algebraic (4,0) curvature tensors on R^n with a complex structure.

Conventions: (g^g)(X,Y,Z,W) = g(X,Z)g(Y,W) - g(X,W)g(Y,Z), so (g^g)(X,Y,Y,X) = -1 on orthonormal pairs, and
4G = g^g + g^g(.,.,J,J) + 2 g(.,J.) g(.,J.), whose holomorphic sectional curvature H(X) = G(X,JX,JX,X) is -1.
Components are float arrays on the optimization path and object arrays of Fractions on the exact path.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from pinchcert.common.constants import RESIDUAL_TOLERANCE
from pinchcert.common.errors import CurvatureInvariantError, DomainError

logger = logging.getLogger(__name__)

Scalar = Union[float, Fraction]


def as_exact(array: np.ndarray) -> np.ndarray:
    """Object array of Fractions with the same shape."""
    return np.vectorize(Fraction, otypes=[object])(array)


def contract_slot(tensor: np.ndarray, matrix: np.ndarray, slot: int) -> np.ndarray:
    """T'[.., i, ..] = sum_a T[.., a, ..] M[a, i] with i at position slot; works on object arrays."""
    return np.moveaxis(np.tensordot(tensor, matrix, axes=([slot], [0])), -1, slot)


def permuted(tensor: np.ndarray, pattern: str) -> np.ndarray:
    """Reindex a 4-tensor: permuted(R, "kijl")[i, j, k, l] = R[k, i, j, l]."""
    return np.transpose(tensor, tuple(pattern.index(letter) for letter in "ijkl"))


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    """Orthogonal n x n matrix J with J^2 = -Id."""

    matrix: np.ndarray

    def __post_init__(self):
        n, columns = self.matrix.shape
        if n != columns or n % 2:
            raise DomainError(f"A complex structure needs an even square matrix, got shape {self.matrix.shape}")

    @classmethod
    def canonical(cls, n: int) -> ComplexStructure:
        """Block diagonal J with blocks [[0, -1], [1, 0]], integer entries."""
        if n < 2 or n % 2:
            raise DomainError(f"Real dimension must be even and >= 2, got n={n}")
        matrix = np.zeros((n, n), dtype=int)
        for block in range(0, n, 2):
            matrix[block + 1, block] = 1
            matrix[block, block + 1] = -1
        return cls(matrix)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> ComplexStructure:
        """Conjugate of the canonical structure by a random orthogonal matrix."""
        q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        return cls(q @ cls.canonical(n).matrix @ q.T)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_exact(self) -> bool:
        return self.matrix.dtype.kind in "iO"

    def residual(self) -> float:
        """Largest entry of J^2 + Id and J^T J - Id."""
        identity = np.eye(self.n, dtype=int)
        square = self.matrix @ self.matrix + identity
        orthogonal = self.matrix.T @ self.matrix - identity
        return float(max(np.max(np.abs(square)), np.max(np.abs(orthogonal))))

    def as_float(self) -> np.ndarray:
        return self.matrix.astype(float)

    def __call__(self, vector: np.ndarray) -> np.ndarray:
        return self.matrix @ vector


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """Components R[i, j, k, l] = R(e_i, e_j, e_k, e_l), optionally flagged Kaehler with respect to J."""

    components: np.ndarray
    complex_structure: Optional[ComplexStructure] = None

    def __post_init__(self):
        shape = self.components.shape
        if len(shape) != 4 or len(set(shape)) != 1:
            raise DomainError(f"Curvature components must have shape (n, n, n, n), got {shape}")
        if self.complex_structure is not None and self.complex_structure.n != shape[0]:
            raise DomainError(f"Complex structure of dimension {self.complex_structure.n} on R^{shape[0]}")

    @property
    def n(self) -> int:
        return self.components.shape[0]

    @property
    def is_exact(self) -> bool:
        return self.components.dtype == object

    @property
    def is_kahler(self) -> bool:
        return self.complex_structure is not None

    def _with(self, components: np.ndarray) -> CurvatureTensor:
        return CurvatureTensor(components, self.complex_structure)

    def __add__(self, other: CurvatureTensor) -> CurvatureTensor:
        if self.n != other.n:
            raise DomainError(f"Dimension mismatch {self.n} != {other.n}")
        return self._with(self.components + other.components)

    def __sub__(self, other: CurvatureTensor) -> CurvatureTensor:
        return self + other * -1

    def __mul__(self, factor: Scalar) -> CurvatureTensor:
        return self._with(self.components * factor)

    __rmul__ = __mul__

    def as_float(self) -> CurvatureTensor:
        return self._with(self.components.astype(float))

    def evaluate(self, x: np.ndarray, y: np.ndarray, z: np.ndarray, w: np.ndarray) -> Scalar:
        value = np.tensordot(self.components, w, axes=([3], [0]))
        value = np.tensordot(value, z, axes=([2], [0]))
        value = np.tensordot(value, y, axes=([1], [0]))
        return np.tensordot(value, x, axes=([0], [0])).item()

    def sectional(self, x: np.ndarray, y: np.ndarray) -> Scalar:
        """R(X,Y,Y,X); the sectional curvature when X, Y are orthonormal."""
        return self.evaluate(x, y, y, x)

    def holomorphic(self, x: np.ndarray) -> Scalar:
        """H(X) = R(X,JX,JX,X)."""
        if self.complex_structure is None:
            raise DomainError("Holomorphic sectional curvature needs a complex structure")
        jx = self.complex_structure(x)
        return self.evaluate(x, jx, jx, x)

    def endomorphism(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Matrix A of R(X,Y) with A[i, j] = R(X,Y,e_j,e_i), i.e. <A Z, W> = R(X,Y,Z,W)."""
        contracted = np.tensordot(y, np.tensordot(x, self.components, axes=([0], [0])), axes=([0], [0]))
        return contracted.T

    def symmetry_residual(self) -> Scalar:
        r = self.components
        return max(
            np.max(np.abs(r + permuted(r, "jikl"))),
            np.max(np.abs(r + permuted(r, "ijlk"))),
            np.max(np.abs(r - permuted(r, "klij"))),
        )

    def bianchi_residual(self) -> Scalar:
        """Largest entry of R(X,Y,Z,W) + R(Z,X,Y,W) + R(Y,Z,X,W)."""
        r = self.components
        return np.max(np.abs(r + permuted(r, "kijl") + permuted(r, "jkil")))

    def kahler_residual(self) -> Scalar:
        """Largest entry of R(JX,JY,Z,W) - R(X,Y,Z,W)."""
        if self.complex_structure is None:
            raise DomainError("Kaehler residual needs a complex structure")
        j = self.complex_structure.matrix
        return np.max(np.abs(contract_slot(contract_slot(self.components, j, 0), j, 1) - self.components))

    def check_invariants(self, tolerance: Optional[float] = None) -> CurvatureTensor:
        """Raise CurvatureInvariantError unless all invariants hold, exactly for exact tensors."""
        if tolerance is None:
            tolerance = 0.0 if self.is_exact else RESIDUAL_TOLERANCE

        residuals = {"symmetry": self.symmetry_residual(), "bianchi": self.bianchi_residual()}
        if self.is_kahler:
            residuals["kahler"] = self.kahler_residual()

        for invariant, residual in residuals.items():
            if residual > tolerance:
                raise CurvatureInvariantError(invariant, float(residual), tolerance)
        return self


def g_wedge_g(n: int, exact: bool = True) -> CurvatureTensor:
    """(g^g)_ijkl = d_ik d_jl - d_il d_jk."""
    if n < 2:
        raise DomainError(f"Real dimension must be >= 2, got n={n}")
    identity = np.eye(n, dtype=int)
    components = np.einsum("ik,jl->ijkl", identity, identity) - np.einsum("il,jk->ijkl", identity, identity)
    return CurvatureTensor(as_exact(components) if exact else components.astype(float))


def complex_hyperbolic_g(
    n: int, complex_structure: Optional[ComplexStructure] = None, exact: bool = True
) -> CurvatureTensor:
    """The tensor G of constant holomorphic sectional curvature -1, assembled from g^g and J."""
    j_struct = complex_structure or ComplexStructure.canonical(n)
    if j_struct.n != n:
        raise DomainError(f"Complex structure of dimension {j_struct.n} on R^{n}")
    if exact and not j_struct.is_exact:
        raise DomainError("Exact construction of G needs an integer complex structure")

    j = j_struct.matrix if exact else j_struct.as_float()
    wedge = g_wedge_g(n, exact=False).components.astype(j.dtype)
    four_g = wedge + contract_slot(contract_slot(wedge, j, 2), j, 3) + 2 * np.multiply.outer(j, j)

    components = as_exact(four_g) / 4 if exact else four_g / 4.0
    return CurvatureTensor(components, j_struct)


def wedge_endomorphism(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Matrix of (X^Y)Z = <X,Z>Y - <Y,Z>X."""
    return np.outer(y, x) - np.outer(x, y)


def g_endomorphism(x: np.ndarray, y: np.ndarray, complex_structure: ComplexStructure) -> np.ndarray:
    """Matrix of G(X,Y) from 4G(X,Y) = X^Y + JX^JY - 2<X,JY>J."""
    j = complex_structure.matrix
    jx, jy = j @ x, j @ y
    four_g = wedge_endomorphism(x, y) + wedge_endomorphism(jx, jy) - 2 * np.dot(x, jy) * j
    return four_g / 4 if four_g.dtype != object else four_g * Fraction(1, 4)


def complex_hyperbolic_g_from_endomorphisms(
    n: int, complex_structure: Optional[ComplexStructure] = None, exact: bool = True
) -> CurvatureTensor:
    """G assembled slice by slice from G(e_i, e_j), as a second construction path."""
    j_struct = complex_structure or ComplexStructure.canonical(n)
    basis = as_exact(np.eye(n, dtype=int)) if exact else np.eye(n)
    if exact:
        j_struct = ComplexStructure(as_exact(j_struct.matrix))

    components = np.empty((n, n, n, n), dtype=object if exact else float)
    for i in range(n):
        for j in range(n):
            # <G(e_i,e_j) e_k, e_l> = M[l, k]
            components[i, j] = g_endomorphism(basis[i], basis[j], j_struct).T
    structure = complex_structure or ComplexStructure.canonical(n)
    return CurvatureTensor(components, structure)


def r0_decompose(tensor: CurvatureTensor, lam: Scalar) -> CurvatureTensor:
    """R_0 = R - (1+lambda)/2 G for a Kaehler tensor R."""
    if tensor.complex_structure is None:
        raise DomainError("Decomposition R = R_0 + (1+lambda)/2 G needs a Kaehler tensor")

    exact = tensor.is_exact and isinstance(lam, (int, Fraction))
    structure = tensor.complex_structure
    if not exact and structure.is_exact:
        structure = ComplexStructure(structure.as_float())
    elif exact and not structure.is_exact:
        raise DomainError("Exact decomposition needs an integer complex structure")

    g = complex_hyperbolic_g(tensor.n, structure, exact=exact)
    factor = (1 + Fraction(lam)) / 2 if exact else (1.0 + float(lam)) / 2.0
    components = tensor.components if exact else tensor.components.astype(float)
    logger.debug("Splitting off %s * G from a tensor in dimension %d", factor, tensor.n)
    return CurvatureTensor(components - g.components * factor, tensor.complex_structure)
