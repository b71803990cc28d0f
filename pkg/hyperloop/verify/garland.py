"""
The loop versions of the commutation of divided powers, checked on
highest-l-weight vectors where the congruence modulo U (n+)^0 is an
equality of vectors. Each check applies both sides independently.
"""

from typing import Callable, Iterator, List, Sequence, Tuple
import logging
import time

from ..coeffring import Scalar, from_int
from ..hypermod import vectors_equal
from ..linalg import Vector, add_into, scale
from ..loopaction import (
    LoopModule, LoopOperator, TwistedLoopModule,
    apply_product, apply_twisted_product, lambda_k_series, lambda_series, lambda_sigma_root_series,
    nontwisted, twisted, twisted_x_series_coefficient, x_series_coefficient, x_series_power,
)
from ..rootfold import FoldingDatum, Root
from .casegrid import ModuleSpec, build_loop_module, build_twisted_module
from .report import CaseReport, GarlandPart, VerificationReport, witness_vector

logger = logging.getLogger(__name__)

Apply = Callable[[Sequence[LoopOperator], Vector], Vector]
Sides = Tuple[Vector, Vector]

DIRECTIONS = (1, -1)


def _series_side(
    apply: Apply,
    coefficient: Callable[[int], LoopOperator],
    n: int,
    k: int,
    lambdas: Sequence[Vector],
    sign: Scalar,
) -> Vector:
    """sign * ((X(u))^(n) Lambda(u))_k v, given lambdas[j] = Lambda_j v."""
    out: Vector = {}
    for d in range(k + 1):
        w = lambdas[k - d]
        if not w:
            continue
        for product in x_series_power(coefficient, n, d):
            add_into(out, apply(product, w))
    return scale(out, sign)


def basic_sides(lm: LoopModule, alpha: int, s: int, direction: int, l: int, k: int, v: Vector) -> Sides:
    """(x+_alpha t^(-+s))^(l) (x-_alpha t^(+-(s+1)))^(k) v against (-1)^l ((X_{alpha;s,+-})^(k-l) Lambda_alpha^+-)_k v."""
    def apply(product: Sequence[LoopOperator], w: Vector) -> Vector:
        return apply_product(lm, product, w)

    lhs = apply((nontwisted(alpha, 1, -direction * s, l), nontwisted(alpha, -1, direction * (s + 1), k)), v)
    lambdas = lambda_series(lm, v, alpha, direction, k)
    rhs = _series_side(
        apply,
        lambda r: x_series_coefficient(alpha, s, direction, r),
        k - l, k, lambdas,
        from_int(lm.field, (-1) ** l),
    )
    return lhs, rhs


def _twisted_apply(tm: TwistedLoopModule) -> Apply:
    def apply(product: Sequence[LoopOperator], w: Vector) -> Vector:
        return apply_twisted_product(tm, product, w)
    return apply


def short_sides(tm: TwistedLoopModule, mu: Root, s: int, direction: int, l: int, k: int, v: Vector) -> Sides:
    """(x+_{mu,+-s} t^(-+s))^(l) (x-_{mu,-+(s+1)} t^(+-(s+1)))^(k) v, for mu short outside A_2n or long in A_2n."""
    apply = _twisted_apply(tm)
    lhs = apply((twisted(mu, 1, -direction * s, l), twisted(mu, -1, direction * (s + 1), k)), v)
    lambdas = lambda_sigma_root_series(tm, v, mu, direction, k)
    rhs = _series_side(
        apply,
        lambda d: twisted_x_series_coefficient(tm.fd, mu, s, direction, d),
        k - l, k, lambdas,
        from_int(tm.field, (-1) ** l),
    )
    return lhs, rhs


def long_sides(tm: TwistedLoopModule, mu: Root, s: int, direction: int, l: int, k: int, v: Vector) -> Sides:
    """(x+_{mu,0} t^(-+ms))^(l) (x-_{mu,0} t^(+-m(s+1)))^(k) v, for mu long outside A_2n."""
    m = tm.fd.m
    apply = _twisted_apply(tm)
    lhs = apply((twisted(mu, 1, -direction * m * s, l), twisted(mu, -1, direction * m * (s + 1), k)), v)
    lambdas = lambda_sigma_root_series(tm, v, mu, direction, k)
    rhs = _series_side(
        apply,
        lambda d: twisted_x_series_coefficient(tm.fd, mu, m * s, direction, d),
        k - l, k, lambdas,
        from_int(tm.field, (-1) ** l),
    )
    return lhs, rhs


def heisenberg_sign(fd: FoldingDatum, mu: Root, structure: Callable[[int, int], int]) -> int:
    """N with [x+_alpha, x+_sigma(alpha)] = N x+_(alpha + sigma(alpha)), alpha the representative of mu."""
    alpha = fd.representative(mu)
    return structure(alpha, fd.sigma_power(alpha, 1))


def double_sides(tm: TwistedLoopModule, mu: Root, s: int, direction: int, a: int, k: int, v: Vector) -> Sides:
    """
    (x+_{mu,0} t^(+-s))^(2k-a) (x-_{2mu,1} t^(-+(2s-1)))^(k) v against
    (-1)^(k+a) N^k ((X_{mu;-s,+-})^(a) Lambda_mu^+-)_k v, for mu short in A_2n
    and s even.
    """
    if s % 2:
        raise ValueError(f'x+_(mu,0) lives in even degrees, got s={s}')
    fd = tm.fd
    two_mu = tuple(2 * x for x in mu)
    apply = _twisted_apply(tm)
    lhs = apply((twisted(mu, 1, direction * s, 2 * k - a), twisted(two_mu, -1, -direction * (2 * s - 1), k)), v)
    lambdas = lambda_sigma_root_series(tm, v, mu, direction, k)
    n = heisenberg_sign(fd, mu, tm.tb.cb.structure_constant)
    rhs = _series_side(
        apply,
        lambda d: twisted_x_series_coefficient(fd, mu, -s, direction, d),
        a, k, lambdas,
        from_int(tm.field, (-1) ** (k + a) * n ** k),
    )
    return lhs, rhs


def leading_sides(tm: TwistedLoopModule, mu: Root, r: int, v: Vector) -> Sides:
    """
    (x+_{mu,0})^(2) (x-_{2mu,1} t)^(1+r) v against -N (x-_{2mu,1} t)^(r) Lambda_{mu,1} v,
    for mu short in A_2n. At k = 1 the remainder sum is empty.
    """
    fd = tm.fd
    two_mu = tuple(2 * x for x in mu)
    apply = _twisted_apply(tm)
    lhs = apply((twisted(mu, 1, 0, 2), twisted(two_mu, -1, 1, 1 + r)), v)
    lam = lambda_sigma_root_series(tm, v, mu, 1, 1)[1]
    if r and lam:
        lam = apply((twisted(two_mu, -1, 1, r),), lam)
    n = heisenberg_sign(fd, mu, tm.tb.cb.structure_constant)
    return lhs, scale(lam, from_int(tm.field, -n))


def central_sides(tm: TwistedLoopModule, mu: Root, s: int, direction: int, l: int, k: int, v: Vector) -> Sides:
    """
    (x+_{2mu,1} t^(-+(2s+1)))^(l) (x-_{2mu,1} t^(+-(2s+3)))^(k) v: the
    elements x+-_{2mu,1} t^odd and h_gamma t^even span a copy of the loop
    algebra of sl2 in which this is the untwisted relation.
    """
    fd = tm.fd
    two_mu = tuple(2 * x for x in mu)
    gamma = fd.representative(two_mu)
    apply = _twisted_apply(tm)
    lhs = apply((twisted(two_mu, 1, -direction * (2 * s + 1), l), twisted(two_mu, -1, direction * (2 * s + 3), k)), v)
    lambdas = lambda_k_series(tm.loop, v, gamma, 2, direction, k)
    rhs = _series_side(
        apply,
        lambda d: twisted(two_mu, -1, direction * (2 * (d + s) + 1), 1),
        k - l, k, lambdas,
        from_int(tm.field, (-1) ** l),
    )
    return lhs, rhs


def _record(case: CaseReport, name: str, sides: Sides) -> bool:
    lhs, rhs = sides
    return case.record(name, vectors_equal(lhs, rhs), {"lhs": witness_vector(lhs), "rhs": witness_vector(rhs)})


def _pairs(k_max: int) -> Iterator[Tuple[int, int]]:
    for k in range(1, k_max + 1):
        for l in range(0, k + 1):
            yield l, k


def _applicable(fd: FoldingDatum, part: GarlandPart) -> List[Root]:
    roots = [mu for mu in fd.restricted_roots() if not fd.is_double_short(mu)]
    if part is GarlandPart.A:
        if fd.is_a2n:
            return [mu for mu in roots if not fd.is_short(mu)]
        return [mu for mu in roots if fd.is_short(mu)]
    if part is GarlandPart.B:
        return [] if fd.is_a2n else [mu for mu in roots if not fd.is_short(mu)]
    a2n_short = [mu for mu in roots if fd.is_a2n and fd.is_short(mu)]
    return [mu for mu in a2n_short if fd.is_double_short(tuple(2 * x for x in mu))]


def check_basic(spec: ModuleSpec, k_max: int = 3, shifts: Sequence[int] = (0, 1)) -> CaseReport:
    case = CaseReport(case={**spec.to_dict(), "part": GarlandPart.Basic.value})
    lm = build_loop_module(spec)
    v = lm.basis_vector(lm.hv)
    for alpha in range(len(lm.cb.rs.positive_roots)):
        for s in shifts:
            for direction in DIRECTIONS:
                for l, k in _pairs(k_max):
                    name = f'alpha={alpha} s={s} dir={direction} l={l} k={k}'
                    if not _record(case, name, basic_sides(lm, alpha, s, direction, l, k, v)):
                        return case
    return case


def check_twisted(spec: ModuleSpec, k_max: int = 3, shifts: Sequence[int] = (0, 1)) -> List[CaseReport]:
    """
    One report per part of the twisted relation. Part (c)(i) runs over the
    even shifts only; part (c)(ii) compares its leading term at k = 1 for
    r = 0..k_max.
    """
    tm = build_twisted_module(spec)
    fd = tm.fd
    v = tm.basis_vector(tm.hv)
    out = []

    for part in (GarlandPart.A, GarlandPart.B, GarlandPart.CI, GarlandPart.CII, GarlandPart.CIII, GarlandPart.CIV):
        case = CaseReport(case={**spec.to_dict(), "part": part.value})
        out.append(case)
        roots = _applicable(fd, part)
        if not roots:
            case.skip(part.value, 'rank')
            continue
        if part is GarlandPart.CIV:
            case.skip(part.value, 'indeterminate remainder')
            continue

        start = time.perf_counter()
        _check_part(case, tm, part, roots, k_max, shifts, v)
        case.elapsed_ms = (time.perf_counter() - start) * 1000
    return out


def _check_part(
    case: CaseReport,
    tm: TwistedLoopModule,
    part: GarlandPart,
    roots: Sequence[Root],
    k_max: int,
    shifts: Sequence[int],
    v: Vector,
) -> None:
    for mu in roots:
        if part is GarlandPart.CII:
            for r in range(0, k_max + 1):
                if not _record(case, f'mu={list(mu)} k=1 r={r}', leading_sides(tm, mu, r, v)):
                    return
            continue

        for direction in DIRECTIONS:
            if part is GarlandPart.CI:
                for s in (s for s in shifts if s % 2 == 0):
                    for k in range(1, k_max + 1):
                        for a in (0, 1):
                            name = f'mu={list(mu)} s={s} dir={direction} a={a} k={k}'
                            if not _record(case, name, double_sides(tm, mu, s, direction, a, k, v)):
                                return
                continue

            for s in shifts:
                for l, k in _pairs(k_max):
                    name = f'mu={list(mu)} s={s} dir={direction} l={l} k={k}'
                    if part is GarlandPart.A:
                        sides = short_sides(tm, mu, s, direction, l, k, v)
                    elif part is GarlandPart.B:
                        sides = long_sides(tm, mu, s, direction, l, k, v)
                    else:
                        sides = central_sides(tm, mu, s, direction, l, k, v)
                    if not _record(case, name, sides):
                        return


def check_garland_on_hw(spec: ModuleSpec, k_max: int = 3) -> VerificationReport:
    report = VerificationReport(suite='garland')
    start = time.perf_counter()
    if spec.twisted:
        report.cases.extend(check_twisted(spec, k_max))
    else:
        case = check_basic(spec, k_max)
        case.elapsed_ms = (time.perf_counter() - start) * 1000
        report.cases.append(case)
    logger.info('garland relations on %s: %s', spec.to_dict(), report.counts())
    return report
