# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Certificates for the claims about the pinching thresholds: roots, monotonicity, the table and the final chain."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple

import sympy

from pinchcert.common.certificate import Certificate, Stopwatch
from pinchcert.common.errors import AssemblyMismatchError, DomainError
from pinchcert.numeric_core.exact import ExactScalar, Ordering, exact_compare
from pinchcert.numeric_core.poly import N, IntPoly, poly_positive_on_ray
from pinchcert.thresholds.pestov import (
    LAMBDA_FINAL_LIMIT,
    PestovConstants,
    assemble_bc,
    assemble_lambda3_inequality,
    b_coeff,
    c_coeff,
    lambda1,
    lambda2,
    lambda3,
    lambda_final,
    pinching_excludes,
)

logger = logging.getLogger(__name__)

CHAIN_START: int = 10
"""Smallest real dimension for which the final chain of fractions is claimed."""

ROOT_DUALITY_POINTS: Tuple[Fraction, ...] = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


@dataclass(frozen=True)
class ThresholdRow:
    """One row of the threshold table for complex dimension m."""

    m: int
    n: int
    lambda1: ExactScalar
    lambda2: ExactScalar
    lambda3: ExactScalar
    lambda0: ExactScalar
    lambda_final: ExactScalar
    dominant: str
    holds: bool

    @classmethod
    def compute(cls, m: int) -> ThresholdRow:
        n = 2 * m
        values = {"lambda1": lambda1(n, 4), "lambda2": lambda2(n, 4), "lambda3": lambda3(n)}

        dominant = "lambda2"
        for name, value in values.items():
            if exact_compare(value, values[dominant]) == Ordering.GREATER:
                dominant = name

        final = ExactScalar.rational(lambda_final(m))
        maximum = values[dominant]
        logger.debug("m=%d: lambda0=%s attained by %s, lambda(m)=%s", m, maximum.decimal(), dominant, final.decimal())

        return cls(
            m=m,
            n=n,
            lambda1=values["lambda1"],
            lambda2=values["lambda2"],
            lambda3=values["lambda3"],
            lambda0=maximum,
            lambda_final=final,
            dominant=dominant,
            holds=exact_compare(maximum, final) == Ordering.LESS,
        )

    def to_jsonable(self) -> Dict:
        return {
            "m": self.m,
            "n": self.n,
            "lambda1": self.lambda1.to_jsonable(),
            "lambda2": self.lambda2.to_jsonable(),
            "lambda3": self.lambda3.to_jsonable(),
            "lambda0": self.lambda0.to_jsonable(),
            "lambda_final": self.lambda_final.to_jsonable(),
            "dominant": self.dominant,
            "verdict": "holds" if self.holds else "fails",
        }


def _even_range(start: int, stop: int) -> List[int]:
    return [value for value in range(start, stop + 1) if value % 2 == 0]


def _map(function: Callable, items: Iterable, jobs: int) -> List:
    items = list(items)
    if jobs <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs, thread_name_prefix="sweep") as pool:
        return list(pool.map(function, items))


def verify_roots(n_values: Iterable[int], k_values: Iterable[int], jobs: int = 1) -> List[Certificate]:
    """B vanishes at lambda1 and B + C/2 at lambda2, the assembly matches, and the root duality signs hold."""
    n_values, k_values = list(n_values), list(k_values)
    pairs = [(n, k) for n in n_values for k in k_values]

    def check(pair: Tuple[int, int]) -> Dict:
        n, k = pair
        b = b_coeff(n, k)
        combined = b + c_coeff(n, k) / 2
        failures: Dict = {}
        if not b(lambda1(n, k)).is_zero:
            failures["b_at_lambda1"] = b(lambda1(n, k))
        if not combined(lambda2(n, k)).is_zero:
            failures["combined_at_lambda2"] = combined(lambda2(n, k))
        for point in ROOT_DUALITY_POINTS:
            if b(point).sign() != (ExactScalar.rational(point) - lambda1(n, k)).sign():
                failures[f"b_sign_at_{point}"] = b(point)
            if combined(point).sign() != (ExactScalar.rational(point) - lambda2(n, k)).sign():
                failures[f"combined_sign_at_{point}"] = combined(point)
        try:
            assemble_bc(n, k)
        except AssemblyMismatchError as error:
            failures["assembly"] = str(error)
        return {"n": n, "k": k, "failures": failures}

    stopwatch = Stopwatch()
    with stopwatch.measure():
        results = _map(check, pairs, jobs)
    failed = [result for result in results if result["failures"]]

    return [
        Certificate.decide(
            "thresholds.roots",
            "lambda1 is the root of B, lambda2 the root of B + C/2, and B, C agree with their assembly from "
            "the constituent bounds",
            {"n": sorted({n for n, _ in pairs}), "k": sorted({k for _, k in pairs})},
            not failed,
            {"failures": failed[:10]} if failed else {"pairs_checked": len(pairs)},
            runtime_ms=stopwatch.elapsed_ms,
        )
    ]


def verify_exclusion_logic(n_values: Iterable[int], k_values: Iterable[int]) -> Certificate:
    """Just above max(lambda1, lambda2) both B and B + C/2 are positive, so nonzero tensors are excluded."""
    n_values, k_values = list(n_values), list(k_values)
    failures = []
    checked = 0
    stopwatch = Stopwatch()
    with stopwatch.measure():
        for n in n_values:
            for k in k_values:
                threshold = lambda1(n, k) if lambda1(n, k) > lambda2(n, k) else lambda2(n, k)
                lam = threshold + Fraction(1, 10**6)
                checked += 1
                if exact_compare(lam, 1) != Ordering.GREATER and not pinching_excludes(n, k, lam):
                    failures.append({"n": n, "k": k, "lambda": lam})

    return Certificate.decide(
        "thresholds.excludes",
        "for lambda > max(lambda1, lambda2) both B(lambda) > 0 and B(lambda) + C(lambda)/2 > 0",
        {"n": list(n_values), "k": list(k_values)},
        not failures,
        {"failures": failures} if failures else {"pairs_checked": checked},
        runtime_ms=stopwatch.elapsed_ms,
    )


def _decreasing(sequence: List[ExactScalar]) -> List[int]:
    """Indices i where sequence[i+1] < sequence[i] fails."""
    return [
        index
        for index in range(len(sequence) - 1)
        if exact_compare(sequence[index + 1], sequence[index]) != Ordering.LESS
    ]


def verify_monotonicity(n: int, k_max: int) -> List[Certificate]:
    """lambda1(n, k) and lambda2(n, k) strictly decrease in k, along with the auxiliary sequences of the proof."""
    if k_max < 3:
        raise DomainError(f"k_max must be >= 3, got {k_max}")

    degrees = list(range(2, k_max + 1))
    certificates: List[Certificate] = []

    def constants(k: int) -> PestovConstants:
        return PestovConstants.of(n, k)

    sequences: Dict[str, Tuple[str, Callable[[int], ExactScalar]]] = {
        "lambda1": ("lambda1(n, k) is strictly decreasing in k", lambda k: lambda1(n, k)),
        "lambda2": ("lambda2(n, k) is strictly decreasing in k", lambda k: lambda2(n, k)),
        "gamma-ratio": (
            "(n+2k-4)*gamma/alpha is strictly decreasing in k",
            lambda k: constants(k).delta * constants(k).gamma / constants(k).alpha,
        ),
        "s": (
            "s = (n+2k-2)*beta/alpha is strictly decreasing in k",
            lambda k: (n + 2 * k - 2) * constants(k).beta / constants(k).alpha,
        ),
        "t": (
            "(n+2k-2)/alpha + 2(n+2k-4)/(n+2k-2) is strictly decreasing in k",
            lambda k: (n + 2 * k - 2) / constants(k).alpha + Fraction(2 * (n + 2 * k - 4), n + 2 * k - 2),
        ),
    }

    for name, (statement, term) in sequences.items():
        stopwatch = Stopwatch()
        with stopwatch.measure():
            values = [term(k) for k in degrees]
            violations = [degrees[index] for index in _decreasing(values)]
        if violations:
            logger.warning("Sequence %s is not decreasing at n=%d, k=%s", name, n, violations[:5])
        certificates.append(
            Certificate.decide(
                f"thresholds.monotone.{name}",
                statement,
                {"n": n, "k_min": 2, "k_max": k_max},
                not violations,
                {"k_violations": violations[:20]} if violations else {"last_value": values[-1]},
                runtime_ms=stopwatch.elapsed_ms,
            )
        )

    # s^2 = (n-1)(4 + (n-2)^2/(k(n+k-2))) exactly
    mismatches = [
        k
        for k in degrees
        if ((n + 2 * k - 2) * constants(k).beta / constants(k).alpha) ** 2
        != ExactScalar.rational((n - 1) * (4 + Fraction((n - 2) ** 2, k * (n + k - 2))))
    ]
    certificates.append(
        Certificate.decide(
            "thresholds.monotone.s-square",
            "s^2 = (n-1)(4 + (n-2)^2/(k(n+k-2)))",
            {"n": n, "k_min": 2, "k_max": k_max},
            not mismatches,
            {"k_mismatches": mismatches} if mismatches else {},
        )
    )
    return certificates


def _chain_polynomials() -> List[Tuple[str, IntPoly]]:
    return [
        (
            "(6n+6)/(44n+43) > (9n-18)/(86n+190)",
            IntPoly.from_expr((6 * N + 6) * (86 * N + 190) - (9 * N - 18) * (44 * N + 43)),
        ),
        (
            "(9n-18)/(86n+190) > (14n-26)/(154n+131)",
            IntPoly.from_expr((9 * N - 18) * (154 * N + 131) - (14 * N - 26) * (86 * N + 190)),
        ),
    ]


def verify_chain(n_min: int = CHAIN_START, n_max: int = 1000) -> List[Certificate]:
    """The chain of lower-bound fractions, certified on the ray n >= 10 and swept exactly on [n_min, n_max]."""
    certificates = []
    for index, (statement, polynomial) in enumerate(_chain_polynomials(), start=1):
        certificates.append(
            poly_positive_on_ray(polynomial, CHAIN_START, claim_id=f"thresholds.chain.ray{index}", statement=statement)
        )
        failures = [n for n in range(n_min, n_max + 1) if polynomial(n) <= 0]
        certificates.append(
            Certificate.decide(
                f"thresholds.chain.sweep{index}",
                statement,
                {"n_min": n_min, "n_max": n_max},
                not failures,
                {"n_failures": failures[:20]} if failures else {},
            )
        )
    return certificates


def verify_threshold_table(m_min: int, m_max: int, jobs: int = 1) -> Tuple[List[ThresholdRow], List[Certificate]]:
    """Rows of the threshold table for every even m, with certificates for the claims about them."""
    if m_min < 6 or m_min % 2:
        raise DomainError(f"m_min must be even and >= 6, got {m_min}")
    if m_max < m_min:
        raise DomainError(f"Empty range of complex dimensions [{m_min}, {m_max}]")

    dimensions = _even_range(m_min, m_max)
    stopwatch = Stopwatch()
    with stopwatch.measure():
        rows: List[ThresholdRow] = _map(ThresholdRow.compute, dimensions, jobs)
    params = {"m_min": m_min, "m_max": m_max}

    not_lambda2 = [{"m": row.m, "dominant": row.dominant} for row in rows if row.dominant != "lambda2"]
    failing = [{"m": row.m, "lambda0": row.lambda0, "lambda_final": row.lambda_final} for row in rows if not row.holds]
    finals = [lambda_final(m) for m in dimensions]
    not_decreasing = [dimensions[i] for i in range(len(finals) - 1) if not finals[i + 1] < finals[i]]
    gaps = [final - LAMBDA_FINAL_LIMIT for final in finals]
    limit_failures = [
        dimensions[i]
        for i, gap in enumerate(gaps)
        if gap <= 0 or gap != Fraction(417, 12 * (336 * dimensions[i] + 105)) or (i and not gap < gaps[i - 1])
    ]

    certificates = [
        Certificate.decide(
            "thresholds.lambda0.is-lambda2",
            "lambda0(m) = lambda2(2m, 4), i.e. lambda2 attains the maximum of the three thresholds",
            params,
            not not_lambda2,
            {"dominated_rows": not_lambda2} if not_lambda2 else {},
            runtime_ms=stopwatch.elapsed_ms,
        ),
        Certificate.decide(
            "thresholds.lambda0.below-final",
            "lambda0(m) < (308m+131)/(336m+105)",
            params,
            not failing,
            {"failing_rows": failing} if failing else {"first_row": rows[0].to_jsonable()},
        ),
        Certificate.decide(
            "thresholds.final.decreasing",
            "(308m+131)/(336m+105) is strictly decreasing in m",
            params,
            not not_decreasing,
            {"m_violations": not_decreasing} if not_decreasing else {},
        ),
        Certificate.decide(
            "thresholds.final.limit",
            "lambda(m) - 11/12 = 417/(12(336m+105)) > 0 and decreases to 0",
            params,
            not limit_failures,
            {"m_violations": limit_failures} if limit_failures else {"limit": LAMBDA_FINAL_LIMIT},
        ),
    ]
    certificates.extend(verify_chain(CHAIN_START, max(CHAIN_START, 2 * m_max)))

    for certificate in certificates:
        if not certificate.holds:
            logger.warning("Certificate %s fails: %s", certificate.claim_id, certificate.witnesses)
    return rows, certificates


def verify_side_claims() -> List[Certificate]:
    """The numeric side claims used when bounding the thresholds."""
    certificates = []
    for claim_id, statement, left, right in (
        ("thresholds.side.sqrt2", "16*sqrt(2) < 68/3", 16 * ExactScalar.sqrt(2), ExactScalar.rational(Fraction(68, 3))),
        ("thresholds.side.sqrt3", "64/sqrt(3) < 37", 64 / ExactScalar.sqrt(3), ExactScalar.rational(37)),
    ):
        certificates.append(
            Certificate.decide(
                claim_id,
                statement,
                {},
                exact_compare(left, right) == Ordering.LESS,
                {"left": left, "right": right},
            )
        )

    # sqrt((n+2)(n-1)) < n + 1/2: both sides positive for n >= 2, so squaring is legal
    both_positive = poly_positive_on_ray(
        IntPoly.from_expr((N + 2) * (N - 1)),
        2,
        claim_id="thresholds.side.square-root-legal",
        statement="(n+2)(n-1) > 0, n >= 2",
    )
    squared = poly_positive_on_ray(
        IntPoly.from_expr((N + sympy.Rational(1, 2)) ** 2 - (N + 2) * (N - 1)),
        2,
        claim_id="thresholds.side.square-root",
        statement="(n+1/2)^2 - (n+2)(n-1) > 0, hence sqrt((n+2)(n-1)) < n + 1/2 for n >= 2",
    )
    certificates.extend([both_positive, squared])
    return certificates


def verify_gamma_bracket(n_min: int = 3, n_max: int = 1000) -> List[Certificate]:
    """4n/(3(n+1)) < gamma_{n,4} = 4(n+2)(n+4)/(3(n+1)(n+6)) < 4/3 for n >= 3, by ray certificates and a sweep."""
    upper = poly_positive_on_ray(
        IntPoly.from_expr((N + 1) * (N + 6) - (N + 2) * (N + 4)),
        3,
        claim_id="thresholds.gamma.upper",
        statement="gamma_{n,4} < 4/3 for n >= 3",
    )
    lower = poly_positive_on_ray(
        IntPoly.from_expr((N + 2) * (N + 4) - N * (N + 6)),
        3,
        claim_id="thresholds.gamma.lower",
        statement="gamma_{n,4} > 4n/(3(n+1)) for n >= 3",
    )

    failures = []
    for n in range(max(n_min, 4), n_max + 1, 2):
        gamma = PestovConstants.of(n, 4).gamma
        if gamma != ExactScalar.rational(Fraction(4 * (n + 2) * (n + 4), 3 * (n + 1) * (n + 6))):
            failures.append({"n": n, "reason": "closed form"})
        elif not (Fraction(4 * n, 3 * (n + 1)) < gamma.rational_part < Fraction(4, 3)):
            failures.append({"n": n, "reason": "bracket"})
    sweep = Certificate.decide(
        "thresholds.gamma.sweep",
        "4n/(3(n+1)) < gamma_{n,4} < 4/3 on even n",
        {"n_min": n_min, "n_max": n_max},
        not failures,
        {"failures": failures} if failures else {},
    )
    return [upper, lower, sweep]


def verify_projector_bound(n_min: int = 8, n_max: int = 200) -> List[Certificate]:
    """2r/(n(n-2r)) <= (n-4)/(n(n+4)) <= (n-2)/(n(n+2)) for 1 <= r and 2r <= n/2 - 2."""
    failures = []
    for n in _even_range(max(n_min, 4), n_max):
        middle = Fraction(n - 4, n * (n + 4))
        loose = Fraction(n - 2, n * (n + 2))
        for r in range(1, (n // 2 - 2) // 2 + 1):
            ratio = Fraction(2 * r, n * (n - 2 * r))
            if not ratio <= middle <= loose:
                failures.append({"n": n, "r": r, "ratio": ratio})
    sweep = Certificate.decide(
        "thresholds.projector-bound.sweep",
        "2r/(n(n-2r)) <= (n-4)/(n(n+4)) <= (n-2)/(n(n+2)) whenever 1 <= 2r <= n/2 - 2",
        {"n_min": n_min, "n_max": n_max},
        not failures,
        {"failures": failures[:20]} if failures else {},
    )
    ray = poly_positive_on_ray(
        IntPoly.from_expr((N - 2) * (N + 4) - (N - 4) * (N + 2)),
        1,
        claim_id="thresholds.projector-bound.ray",
        statement="(n-4)/(n(n+4)) < (n-2)/(n(n+2)) for n >= 1",
    )
    return [sweep, ray]


def verify_lambda3_root(n_values: Iterable[int]) -> Certificate:
    """
    The closed form of lambda3 is the root of the degree-2 inequality. The abbreviated inequality without the
    ||u||^2 part of the G pairing has a different root, recorded as a finding.
    """
    n_values = list(n_values)
    failures = []
    findings = []
    for n in n_values:
        assembled = assemble_lambda3_inequality(n).root()
        if assembled != lambda3(n):
            failures.append({"n": n, "assembled_root": assembled, "closed_form": lambda3(n)})
        abbreviated = assemble_lambda3_inequality(n, include_norm_term=False).root()
        if abbreviated != lambda3(n):
            findings.append({"n": n, "abbreviated_root": abbreviated.decimal()})

    witnesses: Dict = {"abbreviated_variant_differs": len(findings), "example": findings[:1]}
    if failures:
        witnesses["failures"] = failures
    return Certificate.decide(
        "thresholds.lambda3.root",
        "lambda3(n) is the root of the degree-2 inequality with the projector norm bound substituted",
        {"n": list(n_values)},
        not failures,
        witnesses,
    )
