# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Exact checks of the fiberwise integral identities for the tensor G, of the norm relation for contractions of the
quaternionic projector field, and of the curvature pairing bound for pinched tensors.

Fiber integrals are taken over a single sphere with the normalized measure; every identity here is homogeneous in
the measure, so the normalization cancels.
"""
from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Union

import numpy as np
from sympy.polys.rings import PolyElement

from pinchcert.common.certificate import Certificate, Stopwatch
from pinchcert.common.constants import BOUND_TOLERANCE
from pinchcert.common.errors import DomainError, PreconditionViolationError
from pinchcert.curvature_lab.tensor import ComplexStructure, CurvatureTensor, complex_hyperbolic_g
from pinchcert.fiber_harmonics.polysection import (
    PolySection,
    SectionKind,
    commutator_with,
    coordinates,
    degree_project,
    equal_on_sphere,
    harmonic_degree,
    iota_jv,
    iota_v,
    matrix_apply,
    r_squared,
    sphere_integrate,
    to_qq,
    vertical_gradient,
    vertical_laplacian,
)
from pinchcert.fiber_harmonics.sampling import quaternionic_structure, quaternionic_projector

logger = logging.getLogger(__name__)


def _exact_structure(n: int, complex_structure: Optional[ComplexStructure]) -> ComplexStructure:
    structure = complex_structure or ComplexStructure.canonical(n)
    if not structure.is_exact or structure.n != n:
        raise DomainError("Exact identities need an integer complex structure of matching dimension")
    return structure


def _nonzero(components: np.ndarray):
    for index in zip(*np.nonzero(components)):
        yield tuple(int(i) for i in index), components[index]


def _harmonic_representative(f: PolySection, kind: SectionKind) -> tuple:
    if f.kind != kind:
        raise PreconditionViolationError("kind", f"expected a {kind} section, got {f.kind}")
    if (k := harmonic_degree(f)) is None:
        raise PreconditionViolationError("harmonic", "the section mixes several harmonic degrees")
    return degree_project(f, k), k


def _check_lowered(contraction: PolySection, k: int, name: str):
    if not degree_project(contraction, k + 1).is_zero_on_sphere():
        raise PreconditionViolationError("degree", f"{name} has a harmonic component of degree {k + 1}")


def _j_gradient_pairing(gradient: np.ndarray, j: np.ndarray, v: np.ndarray) -> PolyElement:
    """<v, J w> for a vector w of polynomials."""
    jw = matrix_apply(j, gradient)
    return sum((v[a] * jw[a] for a in range(len(v))), v[0] * 0)


def verify_g_identity_tm(
    n: int, f: PolySection, complex_structure: Optional[ComplexStructure] = None
) -> Certificate:
    """
    <G f, grad_V f> = 1/4 delta (|i_v f|^2 + |i_Jv f|^2) + 1/2 |f|^2 + 1/2 int sum_a <v, J grad_V f_a><f, J e_a>
    for vector valued f of harmonic degree k whose contractions with v and Jv have degree at most k - 1.
    """
    structure = _exact_structure(n, complex_structure)
    j = structure.matrix
    stopwatch = Stopwatch()
    with stopwatch.measure():
        h, k = _harmonic_representative(f, SectionKind.VECTOR)
        _check_lowered(iota_v(h), k, "i_v f")
        _check_lowered(iota_jv(h, j), k, "i_Jv f")

        v = coordinates(n)
        gradient = vertical_gradient(h).values
        g = complex_hyperbolic_g(n, structure, exact=True).components

        # sum_a G(v, grad f_a, f, e_a)
        integrand = h.ring.zero
        for (a, b, c, d), value in _nonzero(g):
            integrand = integrand + v[a] * gradient[d, b] * h.values[c] * to_qq(value)
        lhs = sphere_integrate(integrand)

        cross = h.ring.zero
        for alpha in range(n):
            f_dot_j_e = sum((h.values[a] * to_qq(j[a, alpha]) for a in range(n) if j[a, alpha]), h.ring.zero)
            if f_dot_j_e:
                cross = cross + _j_gradient_pairing(gradient[alpha], j, v) * f_dot_j_e

        delta = n + 2 * k - 4
        contractions = iota_v(h).norm_squared() + iota_jv(h, j).norm_squared()
        rhs = Fraction(delta, 4) * contractions + h.norm_squared() / 2 + sphere_integrate(cross) / 2

    logger.debug("Tangent G identity at n=%d, k=%d: %s = %s", n, k, lhs, rhs)
    return Certificate.decide(
        "fiber.g-identity.tangent",
        "<G f, grad_V f> = delta/4 (|i_v f|^2 + |i_Jv f|^2) + |f|^2/2 + 1/2 int sum <v, J grad f_a><f, J e_a>",
        {"n": n, "k": k},
        lhs == rhs,
        {"lhs": lhs, "rhs": rhs, "difference": lhs - rhs},
        runtime_ms=stopwatch.elapsed_ms,
    )


def _basis_conjugation_preserves_gram(n: int, j: np.ndarray) -> bool:
    """e -> -J e J maps the standard basis of symmetric matrices to a family with the same Gram matrix."""
    basis = []
    for a in range(n):
        for b in range(a, n):
            unit = np.zeros((n, n), dtype=int)
            unit[a, b] = unit[b, a] = 1
            basis.append(unit)
    conjugated = [-(j @ unit @ j) for unit in basis]
    gram = np.array([[np.sum(x * y) for y in basis] for x in basis])
    conjugated_gram = np.array([[np.sum(x * y) for y in conjugated] for x in conjugated])
    return bool(np.array_equal(gram, conjugated_gram))


def verify_g_identity_s2(
    n: int, u: PolySection, complex_structure: Optional[ComplexStructure] = None
) -> Certificate:
    """
    <G u, grad_V u> = delta |i_v u|^2 + |u|^2 for symmetric u commuting with J whose contraction has degree <= k - 1.
    """
    structure = _exact_structure(n, complex_structure)
    j = structure.matrix
    stopwatch = Stopwatch()
    with stopwatch.measure():
        h, k = _harmonic_representative(u, SectionKind.SYMMETRIC)
        if any(p for _, p in commutator_with(h, j).entries()):
            raise PreconditionViolationError("commutes_with_j", "[J, u] does not vanish")
        _check_lowered(iota_v(h), k, "i_v u")
        if not _basis_conjugation_preserves_gram(n, j):
            raise PreconditionViolationError("basis", "-J e J does not preserve orthonormality")

        v = coordinates(n)
        gradient = vertical_gradient(h).values
        g = complex_hyperbolic_g(n, structure, exact=True).components
        zero = h.ring.zero

        # derivation action of G(v, grad) on u paired with u, slot by slot
        pairing: Dict[tuple, PolyElement] = {}
        for s, t, q in itertools.product(range(n), repeat=3):
            term = sum((gradient[t, c, q] * h.values[s, c] for c in range(n)), zero)
            term = term - sum((gradient[c, s, q] * h.values[c, t] for c in range(n)), zero)
            if term:
                pairing[(s, t, q)] = term

        integrand = zero
        for (p, q, s, t), value in _nonzero(g):
            if (term := pairing.get((s, t, q))) is not None:
                integrand = integrand + v[p] * term * to_qq(value)
        lhs = sphere_integrate(integrand)
        rhs = (n + 2 * k - 4) * iota_v(h).norm_squared() + h.norm_squared()

    logger.debug("Symmetric G identity at n=%d, k=%d: %s = %s", n, k, lhs, rhs)
    return Certificate.decide(
        "fiber.g-identity.symmetric",
        "<G u, grad_V u> = delta |i_v u|^2 + |u|^2 for symmetric u with [J, u] = 0",
        {"n": n, "k": k},
        lhs == rhs,
        {"lhs": lhs, "rhs": rhs, "difference": lhs - rhs},
        runtime_ms=stopwatch.elapsed_ms,
    )


def verify_projector_norm(n: int) -> List[Certificate]:
    """The quaternionic projector field pi = 2/n Id + u with |i_v u|^2 = 2/(n(n-2)) |u|^2."""
    if n % 4 or n < 8:
        raise DomainError(f"The projector witness needs n divisible by 4 and >= 8, got n={n}")

    j, a = quaternionic_structure(n)
    v = coordinates(n)
    jv = matrix_apply(j, v)
    av = matrix_apply(a, v)
    pi = quaternionic_projector(n)
    zero = pi.ring.zero
    r2 = r_squared(n)

    square = np.empty((n, n), dtype=object)
    for row, column in itertools.product(range(n), repeat=2):
        square[row, column] = sum((pi.values[row, c] * pi.values[c, column] for c in range(n)), zero)

    checks = {
        "av_orthogonal_to_v": not sum((av[i] * v[i] for i in range(n)), zero),
        "av_orthogonal_to_jv": not sum((av[i] * jv[i] for i in range(n)), zero),
        "i_v_pi_vanishes": all(not p for _, p in iota_v(pi).entries()),
        "i_jv_pi_vanishes": all(not p for _, p in iota_jv(pi, j).entries()),
        "commutes_with_j": all(not p for _, p in commutator_with(pi, j).entries()),
        "projector_on_sphere": all(
            equal_on_sphere(square[index], pi.values[index]) for index in itertools.product(range(n), repeat=2)
        ),
    }

    u = degree_project(pi, 2)
    trace_part = degree_project(pi, 0)
    identity_part = PolySection.of(n, np.eye(n, dtype=int).astype(object), SectionKind.SYMMETRIC)
    expected_u = pi - PolySection(n, identity_part.values * r2, SectionKind.SYMMETRIC).scaled(Fraction(2, n))
    checks["trace_part_is_2r_over_n"] = trace_part.equals_on_sphere(identity_part.scaled(Fraction(2, n)))
    checks["u_is_pi_minus_trace"] = all(not p for _, p in (u - expected_u).entries())
    checks["u_harmonic"] = u.equals_on_sphere(degree_project(u, 2))

    contraction, norm = iota_v(u).norm_squared(), u.norm_squared()
    ratio = contraction / norm
    expected = Fraction(2, n * (n - 2))
    failed = [name for name, holds in checks.items() if not holds]

    return [
        Certificate.decide(
            "fiber.projector.structure",
            "pi(v) = (Av)(Av)^T + (JAv)(JAv)^T is a rank-2 projector field with i_v pi = i_Jv pi = 0 and [J, pi] = 0",
            {"n": n},
            not failed,
            {"failed_checks": failed} if failed else {"checks": sorted(checks)},
        ),
        Certificate.decide(
            "fiber.projector.norm",
            "|i_v u|^2 = 2r/(n(n-2r)) |u|^2 with r = 1 for the trace free part u of pi",
            {"n": n, "r": 1},
            ratio == expected,
            {"contraction_norm": contraction, "norm": norm, "ratio": ratio, "expected": expected},
        ),
    ]


def verify_curvature_pairing_bound(
    tensor: CurvatureTensor,
    f: PolySection,
    lam: Union[float, Fraction],
    tol: float = BOUND_TOLERANCE,
) -> Certificate:
    """
    int sum_a R(v, grad f_a, grad f_a, v)
        <= -(3 lambda - 2)/4 alpha_{n,k} |f|^2 - 3 lambda/4 int sum_a <v, J grad f_a>^2
    for f of harmonic degree k; exact when both the tensor and lambda are exact.
    """
    if tensor.complex_structure is None:
        raise DomainError("The curvature pairing bound concerns Kaehler tensors")
    n = tensor.n
    structure = tensor.complex_structure
    j = structure.matrix if structure.is_exact else None
    exact = tensor.is_exact and isinstance(lam, (int, Fraction)) and j is not None

    stopwatch = Stopwatch()
    with stopwatch.measure():
        if (k := harmonic_degree(f)) is None:
            raise PreconditionViolationError("harmonic", "the section mixes several harmonic degrees")
        h = degree_project(f, k)
        v = coordinates(n)
        gradient = vertical_gradient(h)
        zero = h.ring.zero

        components = [gradient.values[index] for index in itertools.product(range(n), repeat=h.rank)]
        pair_sums = np.empty((n, n), dtype=object)
        for b, c in itertools.product(range(n), repeat=2):
            pair_sums[b, c] = sum((grad[b] * grad[c] for grad in components), zero)

        # T[a, b, c, d] = int v_a v_d sum_alpha (grad f_alpha)_b (grad f_alpha)_c
        moments = np.empty((n, n, n, n), dtype=object)
        for a, b, c, d in itertools.product(range(n), repeat=4):
            moments[a, b, c, d] = sphere_integrate(v[a] * v[d] * pair_sums[b, c]) if pair_sums[b, c] else Fraction(0)

        j_matrix = j if j is not None else np.rint(structure.matrix).astype(int)
        cross = sphere_integrate(
            sum((_j_gradient_pairing(grad, j_matrix, v) ** 2 for grad in components), zero)
        ) if j is not None else None
        norm = h.norm_squared()
        alpha = k * (n + k - 2)

        if exact:
            lhs = sum((value * moments[index] for index, value in _nonzero(tensor.components)), Fraction(0))
            lam_value = Fraction(lam)
            rhs = -(3 * lam_value - 2) / 4 * alpha * norm - 3 * lam_value / 4 * cross
            holds = lhs <= rhs
        else:
            if cross is None:
                raise DomainError("The float pairing bound needs an integer complex structure")
            lhs = float(np.tensordot(tensor.components.astype(float), moments.astype(float), axes=4))
            lam_value = float(lam)
            rhs = -(3.0 * lam_value - 2.0) / 4.0 * alpha * float(norm) - 0.75 * lam_value * float(cross)
            holds = lhs <= rhs + tol

    logger.debug("Curvature pairing at n=%d, k=%d: %s <= %s", n, k, lhs, rhs)
    return Certificate.decide(
        "fiber.curvature-pairing",
        "<R grad_V f, grad_V f> <= -(3 lambda - 2)/4 alpha |f|^2 - 3 lambda/4 int sum <v, J grad f_a>^2",
        {"n": n, "k": k, "lambda": lam, "exact": exact},
        holds,
        {"lhs": lhs, "rhs": rhs, "slack": rhs - lhs},
        runtime_ms=stopwatch.elapsed_ms,
    )


def verify_parseval(f: PolySection) -> Certificate:
    """|f|^2 = sum_k |degree_project(f, k)|^2."""
    norm = f.norm_squared()
    pieces = [degree_project(f, k).norm_squared() for k in range(max(f.degree, 0) + 1)]
    return Certificate.decide(
        "fiber.parseval",
        "the L^2 norm splits over harmonic degrees",
        {"n": f.n, "degree": f.degree},
        norm == sum(pieces, Fraction(0)),
        {"norm": norm, "pieces": pieces},
    )


def verify_integration_by_parts(f: PolySection, g: PolySection) -> Certificate:
    """int <grad_V f, grad_V g> = int f Delta_V g for scalar sections."""
    if f.kind != SectionKind.SCALAR or g.kind != SectionKind.SCALAR:
        raise PreconditionViolationError("kind", "integration by parts is checked on scalar sections")
    lhs = sphere_integrate(vertical_gradient(f).inner(vertical_gradient(g)))
    rhs = sphere_integrate(f.scalar_value * vertical_laplacian(g).scalar_value)
    return Certificate.decide(
        "fiber.integration-by-parts",
        "int <grad_V f, grad_V g> = int f Delta_V g",
        {"n": f.n, "degrees": [f.degree, g.degree]},
        lhs == rhs,
        {"lhs": lhs, "rhs": rhs},
    )


def verify_contraction_relations(f: PolySection, complex_structure: Optional[ComplexStructure] = None) -> Certificate:
    """For vector valued f: i_Jv f = -i_v(J f), and |f|^2 >= |i_v f|^2 + |i_Jv f|^2 pointwise and integrated."""
    if f.kind != SectionKind.VECTOR:
        raise PreconditionViolationError("kind", "contraction relations are checked on vector sections")
    j = _exact_structure(f.n, complex_structure).matrix
    v = coordinates(f.n)
    jv = matrix_apply(j, v)
    contraction_v, contraction_jv = iota_v(f).scalar_value, iota_jv(f, j).scalar_value

    j_f = PolySection(f.n, matrix_apply(j, f.values), SectionKind.VECTOR)
    naturality = not (contraction_jv + iota_v(j_f).scalar_value)
    # |f|^2 - <f,v>^2 - <f,Jv>^2 is |f - <f,v>v - <f,Jv>Jv|^2 on the sphere, a sum of squares
    remainder = [f.values[i] - contraction_v * v[i] - contraction_jv * jv[i] for i in range(f.n)]
    pointwise = equal_on_sphere(
        f.inner(f) - contraction_v**2 - contraction_jv**2, sum((p * p for p in remainder), f.ring.zero)
    )
    integrated = f.norm_squared() >= iota_v(f).norm_squared() + iota_jv(f, j).norm_squared()

    return Certificate.decide(
        "fiber.contraction-relations",
        "i_Jv f = -i_v(J f) and |f|^2 >= |i_v f|^2 + |i_Jv f|^2",
        {"n": f.n, "degree": f.degree},
        naturality and pointwise and integrated,
        {"naturality": naturality, "pointwise": pointwise, "integrated": integrated},
    )
