# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Verification suites behind every command, each collecting certificates and table rows."""
from __future__ import annotations

import copy
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from pinchcert.cli.config import Claim, Command, Identity, RunConfig
from pinchcert.common.certificate import Certificate, Stopwatch, Verdict
from pinchcert.curvature_lab.derivation import verify_derivation
from pinchcert.curvature_lab.generator import random_pinched_kahler
from pinchcert.curvature_lab.optimization import verify_bishop_goldberg
from pinchcert.curvature_lab.tensor import complex_hyperbolic_g
from pinchcert.fiber_harmonics.identities import (
    verify_contraction_relations,
    verify_curvature_pairing_bound,
    verify_g_identity_s2,
    verify_g_identity_tm,
    verify_parseval,
    verify_projector_norm,
)
from pinchcert.fiber_harmonics.polysection import SectionKind
from pinchcert.fiber_harmonics.sampling import AdmissibleSample, sample_admissible_section
from pinchcert.lie_arith.clifford import verify_clifford_oracle
from pinchcert.lie_arith.exclusion import (
    enumerate_exclusion_table,
    radon_hurwitz,
    verify_e6_invariants,
    verify_radon_hurwitz_bound,
    verify_weyl_dimensions,
)
from pinchcert.thresholds.verification import (
    CHAIN_START,
    verify_chain,
    verify_exclusion_logic,
    verify_gamma_bracket,
    verify_lambda3_root,
    verify_monotonicity,
    verify_projector_bound,
    verify_roots,
    verify_side_claims,
    verify_threshold_table,
)

logger = logging.getLogger(__name__)

MONOTONICITY_DIMENSIONS: Tuple[int, ...] = (4, 8, 12, 24, 56)
FIBER_SUITE_POINTS: Tuple[Tuple[int, int], ...] = ((4, 2), (8, 2), (8, 4))
PROJECTOR_SUITE_DIMENSIONS: Tuple[int, ...] = (8, 12)
CURVATURE_SUITE_DIMENSIONS: Tuple[int, ...] = (4, 8)
QUICK_TRIALS: int = 3
QUICK_SAMPLES: int = 10_000
QUICK_RESTARTS: int = 16


@dataclass
class SuiteResult:
    """Certificates in order of verification, plus the rows of a table for commands producing one."""

    certificates: List[Certificate] = field(default_factory=list)
    rows: List[Dict] = field(default_factory=list)

    def extend(self, other: SuiteResult):
        self.certificates.extend(other.certificates)
        self.rows.extend(other.rows)


def _trial_seed(seed: Optional[int], trial: int) -> Optional[int]:
    return None if seed is None else seed + trial


def _even(values: Iterable[int]) -> List[int]:
    return [value for value in values if value % 2 == 0]


def thresholds_table(config: RunConfig) -> SuiteResult:
    return thresholds_table_range(*config.m_range, config.jobs)


def thresholds_verify(config: RunConfig) -> SuiteResult:
    n_min, n_max = config.n_range

    if config.claim == Claim.CHAIN:
        return SuiteResult(verify_chain(max(n_min, CHAIN_START), n_max))
    if config.claim == Claim.MONOTONE:
        certificates = []
        for n in [n for n in MONOTONICITY_DIMENSIONS if n_min <= n <= n_max] or [n_min]:
            certificates.extend(verify_monotonicity(n, config.k_max))
        return SuiteResult(certificates)
    if config.claim == Claim.LAMBDA0:
        # the table is indexed by the complex dimension m = n/2, starting at the even m = 6
        m_min = max(6, n_min // 2 + (n_min // 2) % 2)
        return thresholds_table_range(m_min, max(m_min, n_max // 2), config.jobs)
    if config.claim == Claim.GAMMA_BRACKET:
        return SuiteResult(verify_gamma_bracket(max(n_min, 3), n_max))
    if config.claim == Claim.ROOTS:
        n_values = _even(range(max(n_min, 4), n_max + 1))
        k_values = list(range(2, config.k_max + 1))
        return SuiteResult(
            verify_roots(n_values, k_values, config.jobs)
            + [verify_exclusion_logic(n_values, k_values), verify_lambda3_root(n_values)]
        )
    if config.claim == Claim.SIDE_CLAIMS:
        return SuiteResult(verify_side_claims())
    return SuiteResult(verify_projector_bound(max(n_min, 8), n_max))


def thresholds_table_range(m_min: int, m_max: int, jobs: int) -> SuiteResult:
    rows, certificates = verify_threshold_table(m_min, m_max, jobs=jobs)
    return SuiteResult(certificates, [row.to_jsonable() for row in rows])


def verify_exact_g(n: int) -> Certificate:
    """H of the exact tensor G is -1 at rational unit vectors, so G has constant holomorphic curvature -1."""
    tensor = complex_hyperbolic_g(n, exact=True)
    unit_vectors = []
    for i in range(n):
        unit_vectors.append(np.array([Fraction(int(i == j)) for j in range(n)], dtype=object))
    for i in range(n - 1):
        vector = [Fraction(0)] * n
        vector[i], vector[i + 1] = Fraction(3, 5), Fraction(4, 5)
        unit_vectors.append(np.array(vector, dtype=object))

    stopwatch = Stopwatch()
    with stopwatch.measure():
        values = [tensor.holomorphic(x) for x in unit_vectors]
    deviating = [{"vector": vector, "H": value} for vector, value in zip(unit_vectors, values) if value != -1]
    return Certificate.decide(
        "curvature.g.holomorphic",
        "H(X) = -1 exactly for the tensor G at every sampled rational unit vector",
        {"n": n, "vectors": len(unit_vectors)},
        not deviating and tensor.is_kahler,
        {"deviating": deviating} if deviating else {"H": values[0]},
        runtime_ms=stopwatch.elapsed_ms,
    )


def _pinching_trials(n: int, lam: float, trials: int, seed: Optional[int], config: RunConfig) -> SuiteResult:
    result = SuiteResult()
    for trial in range(trials):
        trial_seed = _trial_seed(seed, trial)
        tensor = random_pinched_kahler(n, lam, seed=trial_seed, restarts=config.restarts)
        params = {"n": n, "lambda": lam, "trial": trial, "restarts": config.restarts, "tol": config.tolerance}
        report = verify_bishop_goldberg(
            tensor, lam, restarts=config.restarts, tol=config.tolerance, seed=trial_seed, samples=config.samples
        )
        certificates = report.certificates(params) + verify_derivation(
            tensor, lam, samples=min(config.samples, 1_000), seed=trial_seed, tol=config.tolerance
        )
        for certificate in certificates:
            certificate.seed = trial_seed
        result.certificates.extend(certificates)
        logger.debug("Trial %d at n=%d: H in [%f, %f]", trial, n, report.h_min, report.h_max)
    return result


def curvature_bishop_goldberg(config: RunConfig) -> SuiteResult:
    result = _pinching_trials(config.n, config.lam, config.trials, config.seed, config)
    result.certificates.append(verify_exact_g(config.n))
    return result


def _empty_kernel_certificate(n: int, k: int, kind: SectionKind, samples: List[AdmissibleSample]) -> Certificate:
    """A zero kernel is a legitimate outcome; a section the constructive sampler could not provide is unchecked."""
    vacuous = all(sample.kernel_dimension == 0 for sample in samples)
    return Certificate(
        claim_id="fiber.sampling.kernel",
        statement="the space of admissible sections is zero, so the identity holds vacuously",
        params={"n": n, "k": k, "kind": kind},
        verdict=Verdict.HOLDS if vacuous else Verdict.OUT_OF_RANGE,
        witnesses={
            "kernel_dimension": samples[0].kernel_dimension,
            "strategies": sorted({sample.strategy for sample in samples}),
        },
    )


def _sections(n: int, k: int, kind: SectionKind, trials: int, seed: Optional[int]) -> List[AdmissibleSample]:
    return [sample_admissible_section(n, k, kind, seed=_trial_seed(seed, trial)) for trial in range(trials)]


def _identity_trials(
    n: int, k: int, kind: SectionKind, trials: int, seed: Optional[int], check: Callable[..., Certificate]
) -> SuiteResult:
    return _checked_samples(n, k, kind, _sections(n, k, kind, trials, seed), seed, check)


def _checked_samples(
    n: int,
    k: int,
    kind: SectionKind,
    samples: List[AdmissibleSample],
    seed: Optional[int],
    check: Callable[..., Certificate],
) -> SuiteResult:
    result = SuiteResult()
    empty = [sample for sample in samples if sample.is_empty]
    if empty:
        logger.info(
            "%d of %d samples at n=%d, k=%d found no admissible %s section", len(empty), len(samples), n, k, kind
        )
        result.certificates.append(_empty_kernel_certificate(n, k, kind, empty))

    for trial, sample in enumerate(samples):
        if sample.is_empty:
            continue
        certificate = check(sample.section)
        certificate.seed = _trial_seed(seed, trial)
        result.certificates.append(certificate)
        result.certificates.append(verify_parseval(sample.section))
        if kind == SectionKind.VECTOR:
            result.certificates.append(verify_contraction_relations(sample.section))
    return result


def fiber_verify(config: RunConfig) -> SuiteResult:
    n, k = config.n, config.k
    if config.identity == Identity.TANGENT:
        return _identity_trials(
            n, k, SectionKind.VECTOR, config.trials, config.seed, lambda f: verify_g_identity_tm(n, f)
        )
    if config.identity == Identity.SYMMETRIC:
        return _identity_trials(
            n, k, SectionKind.SYMMETRIC, config.trials, config.seed, lambda u: verify_g_identity_s2(n, u)
        )
    if config.identity == Identity.PROJECTOR_NORM:
        return SuiteResult(verify_projector_norm(n))

    # the pairing bound is an equality for the exact tensor G at lambda = 1
    exact_g = complex_hyperbolic_g(n, exact=True)
    samples = _sections(n, k, SectionKind.VECTOR, config.trials, config.seed)
    result = _checked_samples(
        n,
        k,
        SectionKind.VECTOR,
        samples,
        config.seed,
        lambda f: verify_curvature_pairing_bound(exact_g, f, Fraction(1)),
    )
    tensor = random_pinched_kahler(n, config.lam, seed=config.seed, restarts=config.restarts)
    for trial, sample in enumerate(samples):
        if not sample.is_empty:
            certificate = verify_curvature_pairing_bound(tensor, sample.section, config.lam, config.tolerance)
            certificate.seed = _trial_seed(config.seed, trial)
            result.certificates.append(certificate)
    return result


def lie_exclusion(config: RunConfig) -> SuiteResult:
    survivors, table_certificate = enumerate_exclusion_table(config.p_max, config.jobs)
    certificates = [table_certificate, verify_radon_hurwitz_bound()] + verify_weyl_dimensions()
    return SuiteResult(certificates, [row.to_jsonable() for row in survivors])


def lie_e6_cubic(_: RunConfig) -> SuiteResult:
    return SuiteResult([verify_e6_invariants()])


def lie_rh(config: RunConfig) -> SuiteResult:
    n_max = config.n_range[1]
    rows = [{"n": n, "rho": radon_hurwitz(n)} for n in range(1, n_max + 1)]
    return SuiteResult([verify_clifford_oracle(n_max)], rows)


def acceptance(config: RunConfig) -> SuiteResult:
    """Every certified claim over the ranges of the acceptance criteria, or reduced ranges for quick runs."""
    quick = config.quick
    trials = QUICK_TRIALS if quick else config.trials
    k_max = 40 if quick else 200
    result = SuiteResult()

    logger.info("Thresholds")
    result.extend(thresholds_table_range(6, 100 if quick else 200, config.jobs))
    n_values, k_values = _even(range(4, 41)), list(range(2, 13))
    result.certificates.extend(verify_roots(n_values, k_values, config.jobs))
    result.certificates.append(verify_exclusion_logic(n_values, k_values))
    result.certificates.append(verify_lambda3_root(n_values))
    for n in MONOTONICITY_DIMENSIONS:
        result.certificates.extend(verify_monotonicity(n, k_max))
    result.certificates.extend(verify_chain(CHAIN_START, 200 if quick else 1_000))
    result.certificates.extend(verify_side_claims())
    result.certificates.extend(verify_gamma_bracket(3, 200 if quick else 1_000))
    result.certificates.extend(verify_projector_bound(8, 200))

    logger.info("Fiber identities")
    points = FIBER_SUITE_POINTS[:2] if quick else FIBER_SUITE_POINTS
    for n, k in points:
        result.extend(
            _identity_trials(n, k, SectionKind.VECTOR, trials, config.seed, lambda f, n=n: verify_g_identity_tm(n, f))
        )
        result.extend(
            _identity_trials(
                n, k, SectionKind.SYMMETRIC, trials, config.seed, lambda u, n=n: verify_g_identity_s2(n, u)
            )
        )
    for n in PROJECTOR_SUITE_DIMENSIONS:
        result.certificates.extend(verify_projector_norm(n))

    logger.info("Curvature bounds")
    curvature_config = copy.copy(config)
    if quick:
        curvature_config.samples = min(config.samples, QUICK_SAMPLES)
        curvature_config.restarts = min(config.restarts, QUICK_RESTARTS)
    for n in CURVATURE_SUITE_DIMENSIONS:
        result.extend(_pinching_trials(n, 0.95, trials, config.seed, curvature_config))
        result.certificates.append(verify_exact_g(n))

    logger.info("Lie arithmetic")
    survivors, table_certificate = enumerate_exclusion_table(20, config.jobs)
    result.certificates.append(table_certificate)
    result.certificates.append(verify_radon_hurwitz_bound())
    result.certificates.extend(verify_weyl_dimensions())
    result.certificates.append(verify_e6_invariants())
    result.certificates.append(verify_clifford_oracle(100))
    logger.debug("Exclusion survivors: %s", [row.as_tuple() for row in survivors])
    return result


SUITES: Dict[Command, Callable[[RunConfig], SuiteResult]] = {
    Command.THRESHOLDS_TABLE: thresholds_table,
    Command.THRESHOLDS_VERIFY: thresholds_verify,
    Command.CURVATURE_BISHOP_GOLDBERG: curvature_bishop_goldberg,
    Command.FIBER_VERIFY: fiber_verify,
    Command.LIE_EXCLUSION: lie_exclusion,
    Command.LIE_E6_CUBIC: lie_e6_cubic,
    Command.LIE_RH: lie_rh,
    Command.ALL: acceptance,
}


def run_suite(command: Command, config: RunConfig) -> SuiteResult:
    logger.info("Running '%s'", command)
    return SUITES[command](config)
