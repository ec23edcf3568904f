# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Random Kaehler curvature tensors with holomorphic sectional curvature pinched in [-1, -lambda]."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from pinchcert.common.constants import DEFAULT_RESTARTS, PROJECTION_TOLERANCE
from pinchcert.common.errors import CalibrationError, DomainError
from pinchcert.curvature_lab.optimization import holomorphic_extrema
from pinchcert.curvature_lab.tensor import (
    ComplexStructure,
    CurvatureTensor,
    complex_hyperbolic_g,
    contract_slot,
    permuted,
)

logger = logging.getLogger(__name__)

MAX_PROJECTION_ROUNDS: int = 1_000
DEGENERATE_RANGE: float = 1e-9
"""Holomorphic curvature ranges narrower than this can not be stretched onto [-1, -lambda]."""
INVARIANT_TOLERANCE: float = 1e-10
"""Residual accepted on generated tensors, whose projections stop once a round moves less than PROJECTION_TOLERANCE."""


def random_s2_lambda2(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random element of S^2(Lambda^2 R^n): antisymmetric in both pairs and symmetric under pair exchange."""
    tensor = rng.standard_normal((n, n, n, n))
    tensor = tensor - permuted(tensor, "jikl")
    tensor = tensor - permuted(tensor, "ijlk")
    return (tensor + permuted(tensor, "klij")) / 8.0


def bianchi_projection(components: np.ndarray) -> np.ndarray:
    """R - b(R) with b the cyclic average over the first three slots, the kernel projection of b on S^2 Lambda^2."""
    cyclic = (components + permuted(components, "kijl") + permuted(components, "jkil")) / 3.0
    return components - cyclic


def kahler_projection(components: np.ndarray, j: np.ndarray) -> np.ndarray:
    """Average over the action of (J, J) on the first and on the second pair."""
    first = contract_slot(contract_slot(components, j, 0), j, 1)
    second = contract_slot(contract_slot(components, j, 2), j, 3)
    both = contract_slot(contract_slot(first, j, 2), j, 3)
    return (components + first + second + both) / 4.0


def project_to_kahler_curvature(components: np.ndarray, j: np.ndarray) -> np.ndarray:
    """Alternate both projections until the iterate stops moving."""
    for round_ in range(1, MAX_PROJECTION_ROUNDS + 1):
        projected = kahler_projection(bianchi_projection(components), j)
        change = float(np.max(np.abs(projected - components)))
        components = projected
        if change < PROJECTION_TOLERANCE:
            logger.debug("Alternating projections converged after %d rounds", round_)
            return components
    logger.warning("Alternating projections stopped after %d rounds without reaching the tolerance", round_)
    return components


@dataclass
class Calibration:
    """R = scale * R' + shift * G, mapping the measured range [H'_min, H'_max] onto [-1, -lambda]."""

    scale: float
    shift: float
    h_min: float
    h_max: float


def calibrate(h_min: float, h_max: float, lam: float) -> Calibration:
    if lam == 1.0:
        return Calibration(0.0, 1.0, h_min, h_max)
    if h_max - h_min < DEGENERATE_RANGE:
        raise CalibrationError(f"Degenerate holomorphic curvature range [{h_min}, {h_max}], regenerate with a new seed")
    # H_{aR'+bG} = a H' - b
    scale = (1.0 - lam) / (h_max - h_min)
    return Calibration(scale, scale * h_max + lam, h_min, h_max)


def random_pinched_kahler(
    n: int,
    lam: float,
    seed: Optional[int] = None,
    restarts: int = DEFAULT_RESTARTS,
    complex_structure: Optional[ComplexStructure] = None,
) -> CurvatureTensor:
    """
    Kaehler curvature tensor whose holomorphic sectional curvature ranges over [-1, -lambda], built from a random
    element of S^2(Lambda^2) projected onto Kaehler curvature tensors and calibrated against G.
    """
    if n < 4 or n % 2:
        raise DomainError(f"Real dimension must be even and >= 4, got n={n}")
    if not 0.0 < lam <= 1.0:
        raise DomainError(f"Pinching constant must lie in (0, 1], got {lam}")

    rng = np.random.default_rng(seed)
    structure = complex_structure or ComplexStructure.canonical(n)
    j = structure.as_float()
    g = complex_hyperbolic_g(n, ComplexStructure(j), exact=False)

    random_part = CurvatureTensor(project_to_kahler_curvature(random_s2_lambda2(n, rng), j), structure)
    (h_min, _), (h_max, _) = holomorphic_extrema(random_part, rng, restarts)
    calibration = calibrate(h_min, h_max, lam)
    logger.debug(
        "Calibrating H range [%.9f, %.9f] with scale %.9f and shift %.9f",
        h_min,
        h_max,
        calibration.scale,
        calibration.shift,
    )

    tensor = CurvatureTensor(random_part.components * calibration.scale + g.components * calibration.shift, structure)
    return tensor.check_invariants(INVARIANT_TOLERANCE)
