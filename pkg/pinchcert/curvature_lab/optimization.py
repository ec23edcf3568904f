# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Projected gradient ascent on products of spheres, used to measure holomorphic and sectional curvature extrema of
pinched Kaehler curvature tensors and to check the Bishop-Goldberg bounds stratum by stratum.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from pinchcert.common.certificate import Certificate, Stopwatch
from pinchcert.common.constants import (
    BOUND_TOLERANCE,
    DEFAULT_RESTARTS,
    DEFAULT_SAMPLES,
    FIRST_ORDER_TOLERANCE,
    GRADIENT_TOLERANCE,
    MAX_ASCENT_ITERATIONS,
    SAMPLE_CHUNK,
)
from pinchcert.common.errors import DomainError
from pinchcert.curvature_lab.tensor import CurvatureTensor, r0_decompose

logger = logging.getLogger(__name__)

ARMIJO_SHRINK: float = 0.5
ARMIJO_SLOPE: float = 1e-4
STRATA: Tuple[float, ...] = tuple(index * math.pi / 8 for index in range(5))
"""theta = arccos <X, JY> at which the Bishop-Goldberg bounds are checked: 0, pi/8, ..., pi/2."""


def slot_gradients(
    components: np.ndarray, a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Partial gradients of R(a, b, c, d) with respect to each of its four arguments."""
    return (
        np.einsum("ijkl,j,k,l->i", components, b, c, d),
        np.einsum("ijkl,i,k,l->j", components, a, c, d),
        np.einsum("ijkl,i,j,l->k", components, a, b, d),
        np.einsum("ijkl,i,j,k->l", components, a, b, c),
    )


@dataclass
class AscentResult:
    point: np.ndarray
    value: float
    gradient_norm: float
    iterations: int

    @property
    def converged(self) -> bool:
        return self.gradient_norm <= GRADIENT_TOLERANCE


def projected_gradient_ascent(
    objective: Callable[[np.ndarray], float],
    gradient: Callable[[np.ndarray], np.ndarray],
    project: Callable[[np.ndarray, np.ndarray], np.ndarray],
    retract: Callable[[np.ndarray], np.ndarray],
    start: np.ndarray,
    max_iterations: int = MAX_ASCENT_ITERATIONS,
) -> AscentResult:
    """Maximize objective on a manifold given by a tangent projection and a retraction; Armijo backtracking."""
    point = retract(start)
    value = objective(point)
    direction = project(point, gradient(point))
    norm = float(np.linalg.norm(direction))

    iteration = 0
    while iteration < max_iterations and norm > GRADIENT_TOLERANCE:
        iteration += 1
        step = 1.0
        while step > 1e-16:
            candidate = retract(point + step * direction)
            if (candidate_value := objective(candidate)) >= value + ARMIJO_SLOPE * step * norm**2:
                break
            step *= ARMIJO_SHRINK
        else:
            # no ascent step left at machine precision
            break

        point, value = candidate, candidate_value
        direction = project(point, gradient(point))
        norm = float(np.linalg.norm(direction))

    return AscentResult(point, value, norm, iteration)


def _normalize(vector: np.ndarray) -> np.ndarray:
    return vector / np.linalg.norm(vector)


def _tangent_projection(constraint_jacobian: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Remove the component of vector along the rows of the constraint Jacobian."""
    gram = constraint_jacobian @ constraint_jacobian.T
    multipliers = np.linalg.lstsq(gram, constraint_jacobian @ vector, rcond=None)[0]
    return vector - constraint_jacobian.T @ multipliers


@dataclass
class _Extremum:
    value: float
    witness: Tuple[np.ndarray, np.ndarray]
    gradient_norm: float
    converged: bool


def _best_of(results: List[Tuple[AscentResult, Tuple[np.ndarray, np.ndarray]]], sign: float) -> _Extremum:
    best, witness = max(results, key=lambda item: item[0].value)
    return _Extremum(sign * best.value, witness, best.gradient_norm, best.converged)


def holomorphic_extrema(
    tensor: CurvatureTensor, rng: np.random.Generator, restarts: int = DEFAULT_RESTARTS
) -> Tuple[Tuple[float, np.ndarray], Tuple[float, np.ndarray]]:
    """((H_min, X_min), (H_max, X_max)) over unit vectors, by restarted ascent on the sphere."""
    if tensor.complex_structure is None:
        raise DomainError("Holomorphic curvature extrema need a Kaehler tensor")
    components = tensor.components.astype(float)
    j = tensor.complex_structure.as_float()

    def holomorphic(x: np.ndarray) -> float:
        jx = j @ x
        return float(np.einsum("ijkl,i,j,k,l->", components, x, jx, jx, x))

    def holomorphic_gradient(x: np.ndarray) -> np.ndarray:
        jx = j @ x
        g1, g2, g3, g4 = slot_gradients(components, x, jx, jx, x)
        return g1 + g4 - j @ (g2 + g3)

    def project(x: np.ndarray, g: np.ndarray) -> np.ndarray:
        return g - np.dot(g, x) * x

    extrema = []
    for sign in (-1.0, 1.0):
        best: Optional[AscentResult] = None
        for _ in range(restarts):
            result = projected_gradient_ascent(
                lambda x, s=sign: s * holomorphic(x),
                lambda x, s=sign: s * holomorphic_gradient(x),
                project,
                _normalize,
                rng.standard_normal(tensor.n),
            )
            if best is None or result.value > best.value:
                best = result
        assert best is not None
        extrema.append((sign * best.value, best.point))

    logger.debug("Holomorphic curvature range [%.12f, %.12f] after %d restarts", extrema[0][0], extrema[1][0], restarts)
    return extrema[0], extrema[1]


class _PairProblem:
    """
    R(X,Y,Y,X) over orthonormal pairs. With a stratum angle theta, Y = cos(theta)(-JX) + sin(theta)Z for a unit Z
    orthogonal to X and JX, so <X, JY> = cos(theta); without one, Y ranges over all unit vectors orthogonal to X.
    """

    def __init__(self, tensor: CurvatureTensor, theta: Optional[float]):
        self.components = tensor.components.astype(float)
        self.n = tensor.n
        self.theta = theta
        self.j = tensor.complex_structure.as_float() if tensor.complex_structure is not None else None
        if theta is not None and self.j is None:
            raise DomainError("Stratification by <X, JY> needs a complex structure")

    def split(self, point: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return point[: self.n], point[self.n :]

    def pair(self, point: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        x, z = self.split(point)
        if self.theta is None:
            return x, z
        return x, -math.cos(self.theta) * (self.j @ x) + math.sin(self.theta) * z

    def value(self, point: np.ndarray) -> float:
        x, y = self.pair(point)
        return float(np.einsum("ijkl,i,j,k,l->", self.components, x, y, y, x))

    def gradient(self, point: np.ndarray) -> np.ndarray:
        x, y = self.pair(point)
        g1, g2, g3, g4 = slot_gradients(self.components, x, y, y, x)
        outer, inner = g1 + g4, g2 + g3
        if self.theta is None:
            return np.concatenate([outer, inner])
        # dY/dX = -cos(theta) J and J^T = -J
        return np.concatenate([outer + math.cos(self.theta) * (self.j @ inner), math.sin(self.theta) * inner])

    def _jacobian(self, point: np.ndarray) -> np.ndarray:
        x, z = self.split(point)
        zeros = np.zeros(self.n)
        rows = [
            np.concatenate([2 * x, zeros]),
            np.concatenate([zeros, 2 * z]),
            np.concatenate([z, x]),
        ]
        if self.theta is not None:
            rows.append(np.concatenate([-(self.j @ z), self.j @ x]))
        return np.array(rows)

    def project(self, point: np.ndarray, vector: np.ndarray) -> np.ndarray:
        return _tangent_projection(self._jacobian(point), vector)

    def retract(self, point: np.ndarray) -> np.ndarray:
        x, z = self.split(point)
        x = _normalize(x)
        z = z - np.dot(z, x) * x
        if self.theta is not None:
            jx = self.j @ x
            z = z - np.dot(z, jx) * jx
        return np.concatenate([x, _normalize(z)])

    def extremum(self, rng: np.random.Generator, restarts: int, sign: float) -> _Extremum:
        results = []
        for _ in range(restarts):
            result = projected_gradient_ascent(
                lambda p: sign * self.value(p),
                lambda p: sign * self.gradient(p),
                self.project,
                self.retract,
                rng.standard_normal(2 * self.n),
            )
            results.append((result, self.pair(result.point)))
        return _best_of(results, sign)


def bishop_goldberg_bounds(lam: float, theta: float) -> Tuple[float, float]:
    """[-(1 - 3/4 lambda sin^2), -1/4 (3(1 + cos^2) lambda - 2)] for pairs with <X, JY> = cos(theta)."""
    sin2, cos2 = math.sin(theta) ** 2, math.cos(theta) ** 2
    return -(1.0 - 0.75 * lam * sin2), -0.25 * (3.0 * (1.0 + cos2) * lam - 2.0)


@dataclass
class StratumResult:
    theta: float
    lower_bound: float
    upper_bound: float
    minimum: _Extremum
    maximum: _Extremum
    tolerance: float

    @property
    def holds(self) -> bool:
        return (
            self.minimum.value >= self.lower_bound - self.tolerance
            and self.maximum.value <= self.upper_bound + self.tolerance
        )

    def to_jsonable(self) -> Dict:
        return {
            "theta": self.theta,
            "bounds": [self.lower_bound, self.upper_bound],
            "min": self.minimum.value,
            "max": self.maximum.value,
            "min_witness": [list(v) for v in self.minimum.witness],
            "max_witness": [list(v) for v in self.maximum.witness],
        }


@dataclass
class PinchReport:
    """Measured curvature extrema of one tensor with the witnesses at which they are attained."""

    lam: float
    h_min: float
    h_max: float
    sec_min: float
    sec_max: float
    restarts: int
    tolerance: float
    strata: List[StratumResult] = field(default_factory=list)
    sampled_sec_min: float = math.inf
    sampled_sec_max: float = -math.inf
    sampled_r0_max: float = 0.0
    samples: int = 0
    max_gradient_norm: float = 0.0
    converged_runs: int = 0
    total_runs: int = 0
    witnesses: Dict[str, list] = field(default_factory=dict)

    def certificates(self, params: Dict) -> List[Certificate]:
        lam, tol = self.lam, self.tolerance
        failing_strata = [stratum.to_jsonable() for stratum in self.strata if not stratum.holds]
        certificates = [
            Certificate.decide(
                "curvature.bishop-goldberg.strata",
                "-(1 - 3/4 lambda sin^2 theta) <= R(X,Y,Y,X) <= -1/4 (3(1 + cos^2 theta) lambda - 2) on every stratum",
                params,
                not failing_strata,
                {"failing_strata": failing_strata} if failing_strata else {"strata": len(self.strata)},
            ),
            Certificate.decide(
                "curvature.sectional.range",
                "-1 <= sec <= -(3 lambda - 2)/4 for optimized and sampled pairs",
                params,
                min(self.sec_min, self.sampled_sec_min) >= -1.0 - tol
                and max(self.sec_max, self.sampled_sec_max) <= -(3.0 * lam - 2.0) / 4.0 + tol,
                {
                    "sec_min": self.sec_min,
                    "sec_max": self.sec_max,
                    "sampled_sec_min": self.sampled_sec_min,
                    "sampled_sec_max": self.sampled_sec_max,
                },
            ),
            Certificate.decide(
                "curvature.holomorphic.range",
                "-1 <= H <= -lambda",
                params,
                self.h_min >= -1.0 - tol and self.h_max <= -lam + tol,
                {"h_min": self.h_min, "h_max": self.h_max},
            ),
            Certificate.decide(
                "curvature.r0.bound",
                "|R_0(X,Y,Y,X)| <= 1 - lambda on sampled orthonormal pairs",
                params,
                self.sampled_r0_max <= 1.0 - lam + tol,
                {"sampled_max": self.sampled_r0_max, "samples": self.samples},
            ),
            Certificate.decide(
                "curvature.optimizer.envelope",
                "optimized sectional extrema enclose the sampled ones",
                params,
                self.sec_min <= self.sampled_sec_min + tol and self.sec_max >= self.sampled_sec_max - tol,
                {"optimized": [self.sec_min, self.sec_max], "sampled": [self.sampled_sec_min, self.sampled_sec_max]},
            ),
            Certificate.decide(
                "curvature.optimizer.first-order",
                "projected gradient vanishes at the reported extrema",
                params,
                self.max_gradient_norm <= FIRST_ORDER_TOLERANCE,
                {"max_gradient_norm": self.max_gradient_norm, "converged": f"{self.converged_runs}/{self.total_runs}"},
            ),
        ]
        if lam >= 2.0 / 3.0:
            certificates.append(
                Certificate.decide(
                    "curvature.negatively-pinched",
                    "for lambda >= 2/3 the sectional curvature is negatively (3 lambda - 2)/4 pinched",
                    params,
                    self.sec_max <= -(3.0 * lam - 2.0) / 4.0 + tol and self.sec_min >= -1.0 - tol,
                    {"delta": (3.0 * lam - 2.0) / 4.0, "sec_range": [self.sec_min, self.sec_max]},
                )
            )
        return certificates


def random_orthonormal_pairs(n: int, count: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    x = rng.standard_normal((count, n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    y = rng.standard_normal((count, n))
    y -= np.sum(x * y, axis=1, keepdims=True) * x
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    return x, y


def batched_sectional(components: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum("ijkl,bi,bj,bk,bl->b", components, x, y, y, x, optimize=True)


def sampled_sectional(
    tensor: CurvatureTensor, samples: int, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(values, X, Y) of R(X,Y,Y,X) on random orthonormal pairs, evaluated in batches."""
    components = tensor.components.astype(float)
    values, xs, ys = [], [], []
    remaining = samples
    while remaining > 0:
        count = min(SAMPLE_CHUNK, remaining)
        x, y = random_orthonormal_pairs(tensor.n, count, rng)
        values.append(batched_sectional(components, x, y))
        xs.append(x)
        ys.append(y)
        remaining -= count
    return np.concatenate(values), np.concatenate(xs), np.concatenate(ys)


def verify_bishop_goldberg(
    tensor: CurvatureTensor,
    lam: float,
    restarts: int = DEFAULT_RESTARTS,
    tol: float = BOUND_TOLERANCE,
    seed: Optional[int] = None,
    samples: int = DEFAULT_SAMPLES,
) -> PinchReport:
    """Measure H and sectional extrema of a lambda-pinched Kaehler tensor and compare them with the pinching bounds."""
    if tensor.complex_structure is None:
        raise DomainError("The Bishop-Goldberg bounds concern Kaehler tensors")
    if not 0.0 < lam <= 1.0:
        raise DomainError(f"Pinching constant must lie in (0, 1], got {lam}")

    rng = np.random.default_rng(seed)
    stopwatch = Stopwatch()
    with stopwatch.measure():
        (h_min, x_min), (h_max, x_max) = holomorphic_extrema(tensor, rng, restarts)

        strata = []
        for theta in STRATA:
            problem = _PairProblem(tensor, theta)
            lower, upper = bishop_goldberg_bounds(lam, theta)
            stratum = StratumResult(
                theta, lower, upper, problem.extremum(rng, restarts, -1.0), problem.extremum(rng, restarts, 1.0), tol
            )
            logger.debug(
                "theta=%.4f: R in [%.9f, %.9f], bounds [%.9f, %.9f]",
                theta,
                stratum.minimum.value,
                stratum.maximum.value,
                lower,
                upper,
            )
            if not stratum.holds:
                logger.warning("Bishop-Goldberg bound violated on stratum theta=%.4f", theta)
            strata.append(stratum)

        free = _PairProblem(tensor, None)
        sec_min, sec_max = free.extremum(rng, restarts, -1.0), free.extremum(rng, restarts, 1.0)

        values = r0_values = np.zeros(0)
        if samples:
            values, xs, ys = sampled_sectional(tensor, samples, rng)
            r0_values = batched_sectional(r0_decompose(tensor, lam).components.astype(float), xs, ys)

    extrema = [sec_min, sec_max] + [s.minimum for s in strata] + [s.maximum for s in strata]
    report = PinchReport(
        lam=lam,
        h_min=h_min,
        h_max=h_max,
        sec_min=sec_min.value,
        sec_max=sec_max.value,
        restarts=restarts,
        tolerance=tol,
        strata=strata,
        sampled_sec_min=float(values.min()) if samples else math.inf,
        sampled_sec_max=float(values.max()) if samples else -math.inf,
        sampled_r0_max=float(np.abs(r0_values).max()) if samples else 0.0,
        samples=samples,
        max_gradient_norm=max(extremum.gradient_norm for extremum in extrema),
        converged_runs=sum(extremum.converged for extremum in extrema),
        total_runs=len(extrema),
        witnesses={
            "h_min_at": list(x_min),
            "h_max_at": list(x_max),
            "sec_min_at": [list(v) for v in sec_min.witness],
            "sec_max_at": [list(v) for v in sec_max.witness],
        },
    )
    logger.info(
        "H in [%.9f, %.9f], sec in [%.9f, %.9f] (%.0f ms)",
        report.h_min,
        report.h_max,
        report.sec_min,
        report.sec_max,
        stopwatch.elapsed_ms,
    )
    return report
