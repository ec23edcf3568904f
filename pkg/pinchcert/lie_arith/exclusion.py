# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Arithmetic behind the exclusion of exceptional structure groups: Radon-Hurwitz numbers, the enumeration of odd
dimensional irreducible representations of the exceptional algebras within the admissible dimension window, and the
invariants of E6 in the symmetric powers of its 27-dimensional representation.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from pinchcert.common.certificate import Certificate, Stopwatch
from pinchcert.common.errors import DecompositionGuardError, DomainError
from pinchcert.lie_arith.roots import (
    ALGEBRA_DIMENSIONS,
    Algebra,
    IrrepRecord,
    Weight,
    WeightLattice,
    freudenthal_multiplicities,
    weight_lattice,
    weyl_dimension,
)

logger = logging.getLogger(__name__)

MIN_REPRESENTATION_DIMENSION: int = 7
"""No exceptional algebra has a nontrivial irreducible representation of smaller dimension."""

EXPECTED_SURVIVORS: Tuple[Tuple[Algebra, Weight], ...] = (
    (Algebra.G2, (1, 0)),
    (Algebra.E6, (1, 0, 0, 0, 0, 0)),
    (Algebra.E6, (0, 0, 0, 0, 0, 1)),
)

LITERATURE_CONSTANTS: Dict[str, str] = {
    "g2": "pi_14(SO(15)) = Z/2, so the frame bundle of S^15 admits no reduction to G2 through its 7-dimensional "
    "representation",
    "e6": "E6 fixes an element of S^3 C^27, so the e6 case is not excluded by topology and is settled by the cubic "
    "invariant",
    "classical": "reductions to classical simple groups act reducibly for p >= 2 (vector field count on spheres)",
}
"""Facts from homotopy theory that are quoted, not computed."""

WEYL_DIMENSION_TABLE: Tuple[Tuple[Algebra, Optional[Weight], int], ...] = (
    (Algebra.G2, (1, 0), 7),
    (Algebra.G2, None, 14),
    (Algebra.F4, None, 52),
    (Algebra.E6, (1, 0, 0, 0, 0, 0), 27),
    (Algebra.E6, None, 78),
    (Algebra.E7, None, 133),
    (Algebra.E8, None, 248),
)
"""Known dimensions; None stands for the adjoint representation."""


def radon_hurwitz(n: int) -> int:
    """rho(n) = 8a + 2^b for n = 2^(4a+b) * odd with 0 <= b <= 3."""
    if n < 1:
        raise DomainError(f"Radon-Hurwitz numbers are defined for n >= 1, got n={n}")
    valuation = (n & -n).bit_length() - 1
    a, b = divmod(valuation, 4)
    return 8 * a + 2**b


def verify_radon_hurwitz_bound(p_min: int = 3, p_max: int = 10_000) -> Certificate:
    """rho(4p+4) <= 2p+3, which forces 2p+1 to be the dimension of an irreducible representation."""
    stopwatch = Stopwatch()
    with stopwatch.measure():
        violations = [p for p in range(p_min, p_max + 1) if radon_hurwitz(4 * p + 4) > 2 * p + 3]
    return Certificate.decide(
        "lie.radon-hurwitz.bound",
        "rho(4p+4) <= 2p+3 for every p in range",
        {"p_min": p_min, "p_max": p_max},
        not violations,
        {"violations": violations[:10]} if violations else {"rho_16": radon_hurwitz(16)},
        runtime_ms=stopwatch.elapsed_ms,
    )


def enumerate_irreps(lattice: WeightLattice, max_dimension: int) -> Iterator[IrrepRecord]:
    """
    All irreducible representations of dimension <= max_dimension. The Weyl dimension grows strictly in every
    coefficient of the highest weight, so a coefficient is only increased while the weight with all later
    coefficients zero stays within the bound.
    """

    def search(prefix: Tuple[int, ...]) -> Iterator[IrrepRecord]:
        if len(prefix) == lattice.rank:
            yield IrrepRecord.of(lattice, prefix)
            return
        for coefficient in itertools.count():
            weight = prefix + (coefficient,) + (0,) * (lattice.rank - len(prefix) - 1)
            if weyl_dimension(lattice, weight) > max_dimension:
                break
            yield from search(prefix + (coefficient,))

    yield from search(())


@dataclass(frozen=True)
class ExclusionRow:
    """An odd dimensional irreducible representation in the admissible window, with the vector field test."""

    irrep: IrrepRecord
    p: int
    radon_hurwitz: int
    required: int

    @property
    def survives(self) -> bool:
        return self.radon_hurwitz >= self.required

    def as_tuple(self) -> Tuple[str, Weight, int]:
        return str(self.irrep.algebra), self.irrep.highest_weight, self.irrep.dimension

    def to_jsonable(self) -> Dict:
        return {
            **self.irrep.to_jsonable(),
            "p": self.p,
            "radon_hurwitz": self.radon_hurwitz,
            "required": self.required,
            "survives": self.survives,
        }


def _window_candidates(algebra: Algebra) -> List[ExclusionRow]:
    lattice = weight_lattice(algebra)
    dimension = ALGEBRA_DIMENSIONS[algebra]
    rows = []
    for irrep in enumerate_irreps(lattice, dimension + 1):
        if irrep.dimension % 2 == 0 or irrep.dimension < MIN_REPRESENTATION_DIMENSION:
            continue
        p = (irrep.dimension - 1) // 2
        rows.append(ExclusionRow(irrep, p, radon_hurwitz(4 * p + 4), 4 * p + 3 - dimension))
    logger.debug("%s: %d odd dimensional candidates in [7, %d]", algebra, len(rows), dimension + 1)
    return rows


def enumerate_exclusion_table(p_max: int = 20, jobs: int = 1) -> Tuple[List[ExclusionRow], Certificate]:
    """
    Odd dimensional irreducible representations with 7 <= 2p+1 <= dim + 1 of the five exceptional algebras, filtered
    by rho(4p+4) >= 4p+3 - dim and p <= p_max. The survivors must be the two 27-dimensional representations of e6 and
    the 7-dimensional representation of g2.
    """
    if p_max < 13:
        raise DomainError(f"The table needs p_max >= 13 to reach the 27-dimensional representations, got {p_max}")

    stopwatch = Stopwatch()
    with stopwatch.measure():
        with ThreadPoolExecutor(max_workers=max(jobs, 1), thread_name_prefix="sweep") as executor:
            per_algebra = list(executor.map(_window_candidates, list(Algebra)))

    candidates = [row for rows in per_algebra for row in rows]
    survivors = [row for row in candidates if row.survives and row.p <= p_max]
    beyond_range = [row for row in candidates if row.survives and row.p > p_max]
    found = sorted((row.irrep.algebra, row.irrep.highest_weight) for row in survivors)
    unexpected = [row for row in survivors if (row.irrep.algebra, row.irrep.highest_weight) not in EXPECTED_SURVIVORS]

    for row in unexpected:
        logger.warning("Unexpected survivor of the exclusion filter: %s", row.to_jsonable())

    certificate = Certificate.decide(
        "lie.exclusion.table",
        "only e6 with its two 27-dimensional representations and g2 with its 7-dimensional representation pass "
        "7 <= 2p+1 <= dim + 1 and rho(4p+4) >= 4p+3 - dim",
        {"p_max": p_max},
        found == sorted(EXPECTED_SURVIVORS) and not beyond_range,
        {
            "survivors": [row.to_jsonable() for row in survivors],
            "candidates": [row.to_jsonable() for row in candidates],
            "unexpected": [row.to_jsonable() for row in unexpected],
            "beyond_p_max": [row.to_jsonable() for row in beyond_range],
            "literature": LITERATURE_CONSTANTS,
        },
        runtime_ms=stopwatch.elapsed_ms,
    )
    return survivors, certificate


def verify_weyl_dimensions() -> List[Certificate]:
    """Root system invariants of every exceptional algebra and the known dimensions 7, 14, 27, 52, 78, 133, 248."""
    certificates = []
    for algebra in Algebra:
        checks = weight_lattice(algebra).invariant_residuals()
        failed = [name for name, holds in checks.items() if not holds]
        certificates.append(
            Certificate.decide(
                f"lie.root-system.{algebra}",
                "Cartan matrix matches the embedded simple roots, #positive roots = (dim - rank)/2, "
                "2 rho = sum of positive roots",
                {"algebra": str(algebra)},
                not failed,
                {"failed_checks": failed}
                if failed
                else {"positive_roots": len(weight_lattice(algebra).positive_roots)},
            )
        )

    table = []
    for algebra, weight, expected in WEYL_DIMENSION_TABLE:
        lattice = weight_lattice(algebra)
        weight = weight or lattice.adjoint_weight
        table.append({"algebra": str(algebra), "highest_weight": weight, "dimension": weyl_dimension(lattice, weight)})
        table[-1]["expected"] = expected
    mismatches = [row for row in table if row["dimension"] != row["expected"]]
    certificates.append(
        Certificate.decide(
            "lie.weyl-dimension",
            "the Weyl dimension formula reproduces 7, 14, 27, 52, 78, 133 and 248",
            {},
            not mismatches,
            {"table": table, "mismatches": mismatches},
        )
    )
    return certificates


def symmetric_power_weights(weights: List[Weight], degree: int) -> Counter:
    """Weight multiset of S^degree V from the weight list of V, one entry per monomial."""
    powers: Counter = Counter()
    for combination in itertools.combinations_with_replacement(range(len(weights)), degree):
        powers[tuple(map(sum, zip(*(weights[index] for index in combination))))] += 1
    return powers


def decompose(lattice: WeightLattice, weights: Counter) -> Dict[Weight, int]:
    """
    Split a Weyl invariant weight multiset into irreducible characters by repeatedly removing the character of a
    maximal remaining dominant weight. Only dominant weights are tracked.
    """
    total = sum(weights.values())
    remaining = Counter({weight: count for weight, count in weights.items() if lattice.is_dominant(weight)})
    rho = lattice.weyl_vector
    summands: Dict[Weight, int] = {}
    accounted = 0

    while remaining:
        top = max(remaining, key=lambda weight: (lattice.inner(weight, rho), weight))
        if (count := remaining[top]) < 0:
            raise DecompositionGuardError(f"Negative multiplicity {count} of {top}: the multiset is not a character")
        accounted += count * weyl_dimension(lattice, top)
        if accounted > total:
            raise DecompositionGuardError(f"Summands account for {accounted} dimensions of {total}")
        summands[top] = count
        for weight, multiplicity in freudenthal_multiplicities(lattice, top).items():
            remaining[weight] -= count * multiplicity
            if remaining[weight] == 0:
                del remaining[weight]

    if accounted != total:
        raise DecompositionGuardError(f"Summands account for {accounted} dimensions of {total}")
    return summands


def e6_symmetric_power(degree: int) -> Dict[Weight, int]:
    """Decomposition of S^degree of the 27-dimensional representation of e6."""
    lattice = weight_lattice(Algebra.E6)
    minuscule = lattice.fundamental_weights[0]
    weights = lattice.orbit(minuscule)
    if len(weights) != weyl_dimension(lattice, minuscule):
        raise DecompositionGuardError(f"The orbit of {minuscule} has {len(weights)} weights")
    return decompose(lattice, symmetric_power_weights(weights, degree))


def e6_cubic_invariant_dim() -> int:
    return e6_symmetric_power(3).get(weight_lattice(Algebra.E6).zero, 0)


def verify_e6_invariants() -> Certificate:
    """E6 fixes an element of S^3 C^27 and nothing in S^2 C^27."""
    lattice = weight_lattice(Algebra.E6)
    stopwatch = Stopwatch()
    with stopwatch.measure():
        quadratic, cubic = e6_symmetric_power(2), e6_symmetric_power(3)

    def describe(summands: Dict[Weight, int]) -> List[Dict]:
        return [
            {**IrrepRecord.of(lattice, weight).to_jsonable(), "multiplicity": count}
            for weight, count in sorted(summands.items(), key=lambda item: weyl_dimension(lattice, item[0]))
        ]

    cubic_dimension = sum(count * weyl_dimension(lattice, weight) for weight, count in cubic.items())
    invariants = cubic.get(lattice.zero, 0)
    logger.info("S^3 of the 27 of e6 contains %d invariant(s)", invariants)
    return Certificate.decide(
        "lie.e6.cubic-invariant",
        "E6 fixes an element of S^3 C^27; S^2 C^27 has no invariant and dim S^3 C^27 = C(29, 3) = 3654",
        {"algebra": "e6"},
        invariants >= 1 and lattice.zero not in quadratic and cubic_dimension == 3654,
        {
            "cubic_invariant_dim": invariants,
            "cubic_summands": describe(cubic),
            "quadratic_summands": describe(quadratic),
            "cubic_dimension": cubic_dimension,
        },
        runtime_ms=stopwatch.elapsed_ms,
    )
