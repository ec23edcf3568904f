# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Extension of R(X,Y) as a derivation to exterior and symmetric powers, and the bound on the R_0 part of it."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

import numpy as np

from pinchcert.common.certificate import Certificate, Stopwatch
from pinchcert.common.constants import BOUND_TOLERANCE, RESIDUAL_TOLERANCE
from pinchcert.common.errors import DomainError
from pinchcert.curvature_lab.optimization import random_orthonormal_pairs
from pinchcert.curvature_lab.tensor import CurvatureTensor, r0_decompose

logger = logging.getLogger(__name__)


class TensorSpace(str, Enum):
    EXTERIOR = "exterior"
    SYMMETRIC = "symmetric"

    def __str__(self) -> str:
        return self.value


def _parity(permutation) -> int:
    inversions = sum(1 for a, b in itertools.combinations(permutation, 2) if a > b)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True, eq=False)
class DerivationAction:
    """
    R(X,Y) acting on p-tensors: (D T)_{i_1..i_p} = sum_s sum_j A[i_s, j] T_{i_1..j..i_p} with A the matrix of R(X,Y).
    Skew-symmetric A preserves both the exterior and the symmetric power.
    """

    tensor: CurvatureTensor
    p: int
    space: TensorSpace

    def apply(self, x: np.ndarray, y: np.ndarray, omega: np.ndarray) -> np.ndarray:
        if omega.shape != (self.tensor.n,) * self.p:
            raise DomainError(f"Expected a {self.p}-tensor on R^{self.tensor.n}, got shape {omega.shape}")
        endomorphism = self.tensor.endomorphism(x, y)
        result = np.zeros_like(omega)
        for slot in range(self.p):
            result = result + np.moveaxis(np.tensordot(endomorphism, omega, axes=([1], [slot])), 0, slot)
        return result

    def pairing(self, x: np.ndarray, y: np.ndarray, omega: np.ndarray, eta: np.ndarray) -> float:
        """<R(X,Y) omega, eta> in the Frobenius inner product."""
        return float(np.sum(self.apply(x, y, omega) * eta))

    def project(self, tensor: np.ndarray) -> np.ndarray:
        """Orthogonal projection of a p-tensor onto the exterior or symmetric power."""
        total = np.zeros_like(tensor)
        permutations = list(itertools.permutations(range(self.p)))
        for permutation in permutations:
            sign = _parity(permutation) if self.space == TensorSpace.EXTERIOR else 1
            total = total + sign * np.transpose(tensor, permutation)
        return total / len(permutations)

    def random_unit(self, rng: np.random.Generator) -> np.ndarray:
        projected = self.project(rng.standard_normal((self.tensor.n,) * self.p))
        return projected / np.linalg.norm(projected)


def derivation_extend(tensor: CurvatureTensor, p: int, space: str = "symmetric") -> DerivationAction:
    if not 1 <= p <= 3:
        raise DomainError(f"Tensor degree must be between 1 and 3, got p={p}")
    if space == TensorSpace.EXTERIOR and p > tensor.n:
        raise DomainError(f"Lambda^{p} of R^{tensor.n} is trivial")
    return DerivationAction(tensor, p, TensorSpace(space))


def verify_derivation(
    tensor: CurvatureTensor,
    lam: float,
    samples: int = 1_000,
    seed: Optional[int] = None,
    tol: float = BOUND_TOLERANCE,
) -> List[Certificate]:
    """
    Commutator form of the action on 2-tensors, the base case p = 1, and
    |<(R_0)(X,Y) omega, eta>| <= 4p/3 (1 - lambda) for unit omega, eta in Lambda^p and S^p, p = 1, 2, 3.
    """
    rng = np.random.default_rng(seed)
    float_tensor = tensor.as_float()
    params: Dict = {"n": tensor.n, "lambda": lam, "samples": samples}
    certificates = []

    xs, ys = random_orthonormal_pairs(tensor.n, samples, rng)
    action = derivation_extend(float_tensor, 2, TensorSpace.SYMMETRIC)
    base = derivation_extend(float_tensor, 1)
    commutator_residual = 0.0
    base_residual = 0.0
    for x, y in zip(xs[:100], ys[:100]):
        u = rng.standard_normal((tensor.n, tensor.n))
        a = float_tensor.endomorphism(x, y)
        commutator_residual = max(commutator_residual, float(np.max(np.abs(action.apply(x, y, u) - (a @ u - u @ a)))))
        v = rng.standard_normal(tensor.n)
        base_residual = max(base_residual, float(np.max(np.abs(base.apply(x, y, v) - a @ v))))
    certificates.append(
        Certificate.decide(
            "curvature.derivation.commutator",
            "R acts on 2-tensors by u -> [R(X,Y), u] and on vectors by R(X,Y)",
            params,
            commutator_residual <= RESIDUAL_TOLERANCE and base_residual <= RESIDUAL_TOLERANCE,
            {"commutator_residual": commutator_residual, "base_residual": base_residual},
        )
    )

    r0 = r0_decompose(float_tensor, lam)
    for space in TensorSpace:
        for p in (1, 2, 3):
            if space == TensorSpace.EXTERIOR and p > tensor.n:
                continue
            stopwatch = Stopwatch()
            with stopwatch.measure():
                action = derivation_extend(r0, p, space)
                worst = 0.0
                for x, y in zip(xs, ys):
                    worst = max(worst, abs(action.pairing(x, y, action.random_unit(rng), action.random_unit(rng))))
            bound = 4.0 * p / 3.0 * (1.0 - lam)
            logger.debug("%s^%d: largest sampled pairing %.9f against %.9f", space, p, worst, bound)
            certificates.append(
                Certificate.decide(
                    f"curvature.derivation.bound.{space}{p}",
                    f"|<R_0(X,Y) omega, eta>| <= 4p/3 (1 - lambda) on unit elements of the {space} power, p = {p}",
                    {**params, "p": p},
                    worst <= bound + tol,
                    {"sampled_max": worst, "bound": bound},
                    runtime_ms=stopwatch.elapsed_ms,
                )
            )
    return certificates
