# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Explicit Clifford module structures on R^n, realizing rho(n) - 1 pointwise independent vector fields on S^(n-1)."""
from __future__ import annotations

import itertools
import logging
from typing import List, Tuple

import numpy as np

from pinchcert.common.certificate import Certificate, Stopwatch
from pinchcert.common.errors import DomainError
from pinchcert.lie_arith.exclusion import radon_hurwitz

logger = logging.getLogger(__name__)

PERIOD_DIMENSION: int = 16
"""Tensoring with R^16 adds eight generators."""


def _conjugate(x: Tuple[int, ...]) -> Tuple[int, ...]:
    return (x[0],) + tuple(-c for c in x[1:])


def cayley_dickson_product(x: Tuple[int, ...], y: Tuple[int, ...]) -> Tuple[int, ...]:
    """(a, b)(c, d) = (ac - d* b, da + b c*), building C, H and O from R by doubling."""
    if len(x) == 1:
        return (x[0] * y[0],)
    half = len(x) // 2
    a, b, c, d = x[:half], x[half:], y[:half], y[half:]
    first = [p - q for p, q in zip(cayley_dickson_product(a, c), cayley_dickson_product(_conjugate(d), b))]
    second = [p + q for p, q in zip(cayley_dickson_product(d, a), cayley_dickson_product(b, _conjugate(c)))]
    return tuple(first + second)


def _left_multiplications(dimension: int) -> List[np.ndarray]:
    """Left multiplication by the imaginary units of the normed division algebra of the given dimension."""
    units = [tuple(int(i == j) for j in range(dimension)) for i in range(dimension)]
    generators = []
    for unit in units[1:]:
        columns = [cayley_dickson_product(unit, basis) for basis in units]
        generators.append(np.array(columns, dtype=int).T)
    return generators


def _periodicity_step(generators: List[np.ndarray], dimension: int) -> List[np.ndarray]:
    """
    From k generators on R^d to k + 8 generators on R^16 (x) R^d: eight generators F_i (x) Id on R^16 = R^8 (x) R^2 and
    Omega (x) A_j with Omega a symmetric involution anticommuting with every F_i.
    """
    sigma = np.diag([1, -1])
    rotation = np.array([[0, -1], [1, 0]])
    swap = np.array([[0, 1], [1, 0]])
    octonions = _left_multiplications(8)

    base = [np.kron(e, sigma) for e in octonions] + [np.kron(np.eye(8, dtype=int), rotation)]
    omega = np.kron(np.eye(8, dtype=int), swap)
    identity = np.eye(dimension, dtype=int)
    return [np.kron(f, identity) for f in base] + [np.kron(omega, a) for a in generators]


def clifford_generators(n: int) -> List[np.ndarray]:
    """rho(n) - 1 skew-symmetric orthogonal integer matrices on R^n, pairwise anticommuting, each squaring to -Id."""
    if n < 1:
        raise DomainError(f"Clifford generators need n >= 1, got n={n}")
    valuation = (n & -n).bit_length() - 1
    periods, remainder = divmod(valuation, 4)

    generators = _left_multiplications(2**remainder)
    dimension = 2**remainder
    for _ in range(periods):
        generators = _periodicity_step(generators, dimension)
        dimension *= PERIOD_DIMENSION

    odd_part = np.eye(n // dimension, dtype=int)
    return [np.kron(generator, odd_part) for generator in generators]


def clifford_residuals(generators: List[np.ndarray]) -> dict:
    identity = np.eye(generators[0].shape[0], dtype=int) if generators else None
    return {
        "skew": all(np.array_equal(a.T, -a) for a in generators),
        "square_minus_identity": all(np.array_equal(a @ a, -identity) for a in generators),
        "anticommute": all(not np.any(a @ b + b @ a) for a, b in itertools.combinations(generators, 2)),
    }


def verify_clifford_oracle(n_max: int = 100) -> Certificate:
    """The explicit construction has exactly rho(n) - 1 generators on R^n for every n <= n_max."""
    stopwatch = Stopwatch()
    failures = []
    with stopwatch.measure():
        for n in range(1, n_max + 1):
            generators = clifford_generators(n)
            checks = clifford_residuals(generators)
            if len(generators) != radon_hurwitz(n) - 1 or not all(checks.values()):
                failures.append({"n": n, "generators": len(generators), "rho": radon_hurwitz(n), **checks})
    logger.debug("Clifford construction checked up to n=%d with %d failures", n_max, len(failures))
    return Certificate.decide(
        "lie.radon-hurwitz.clifford",
        "R^n carries rho(n) - 1 anticommuting orthogonal complex structures",
        {"n_max": n_max},
        not failures,
        {"failures": failures} if failures else {"generators_on_r16": len(clifford_generators(16))},
        runtime_ms=stopwatch.elapsed_ms,
    )
