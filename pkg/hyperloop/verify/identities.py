"""
Identities of divided powers and binomials: sums of commuting elements,
the binomial of a sum, the commutation of (x+)^(l) past (x-)^(k) on sl2
Weyl modules, and products of twisted divided powers.
"""

from fractions import Fraction
from typing import List, Sequence, Tuple
import logging
import time

from ..coeffring import RingSpec, from_int, zero
from ..hypermod import Module, apply_divided_power, build_weyl_module, vectors_equal
from ..linalg import Vector, add_into, scale
from ..loopaction import TwistedLoopModule, apply_twisted, twisted, twisted_evaluation_module
from ..ncr import compositions, factorial, ncr
from ..rootfold import folding, root_system
from .report import CaseReport, VerificationReport, witness_vector

logger = logging.getLogger(__name__)

# eigenvalues of commuting diagonal operators
DIAGONALS: Tuple[Tuple[int, ...], ...] = (
    (1, -2, 3, 0, 5),
    (2, 2, -1, 4, -3),
    (-1, 0, 1, 7, 2),
)


def _divided(c: Fraction, n: int) -> Fraction:
    return c ** n / factorial(n)


def check_divided_power_sum(n_max: int) -> CaseReport:
    """(x_1 + ... + x_r)^(n) = sum over compositions of prod x_j^(n_j) for commuting diagonal x_j."""
    case = CaseReport(case={"identity": "divided power of a sum", "n_max": n_max})
    for r in (2, 3):
        for n in range(n_max + 1):
            for position in range(len(DIAGONALS[0])):
                values = [Fraction(d[position]) for d in DIAGONALS[:r]]
                lhs = _divided(sum(values, Fraction(0)), n)
                rhs = Fraction(0)
                for parts in compositions(n, r):
                    term = Fraction(1)
                    for c, k in zip(values, parts):
                        term *= _divided(c, k)
                    rhs += term
                if lhs != rhs:
                    case.record(f'r={r} n={n}', False, {"position": position, "lhs": str(lhs), "rhs": str(rhs)})
                    return case
    case.record('divided power of a sum', True)
    return case


def check_binomial_sum(n_max: int, field: RingSpec) -> CaseReport:
    """binom(x_1 + x_2; n) = sum_{j=0}^n binom(x_1; j) binom(x_2; n - j), read in the field."""
    case = CaseReport(case={"identity": "binomial of a sum", "n_max": n_max, "field": field.canonical()})
    first, second = DIAGONALS[0], DIAGONALS[1]
    for n in range(n_max + 1):
        for a, b in zip(first, second):
            lhs = from_int(field, ncr(a + b, n))
            rhs = zero(field)
            for j in range(n + 1):
                rhs = rhs + from_int(field, ncr(a, j) * ncr(b, n - j))
            if lhs != rhs:
                case.record(f'n={n}', False, {"x1": a, "x2": b, "lhs": lhs.canonical(), "rhs": rhs.canonical()})
                return case
    case.record('binomial of a sum', True)
    return case


def _shifted_binomial(module: Module, v: Vector, shift: int, k: int) -> Vector:
    """binom(h + shift; k) on a combination of weight vectors of sl2."""
    out: Vector = {}
    for idx, c in v.items():
        add_into(out, {idx: c * ncr(module.weights[idx][0] + shift, k)})
    return out


def commutation_terms(module: Module, l: int, k: int, v: Vector) -> Tuple[Vector, Vector]:
    """Both sides of (x+)^(l)(x-)^(k) v = sum_m (x-)^(k-m) binom(h - k - l + 2m; m) (x+)^(l-m) v."""
    lhs = apply_divided_power(module, 0, 1, l, apply_divided_power(module, 0, -1, k, v))
    rhs: Vector = {}
    for m in range(min(k, l) + 1):
        w = apply_divided_power(module, 0, 1, l - m, v)
        w = _shifted_binomial(module, w, -k - l + 2 * m, m)
        add_into(rhs, apply_divided_power(module, 0, -1, k - m, w))
    return lhs, rhs


def check_commutation(n_max: int, field: RingSpec) -> CaseReport:
    case = CaseReport(case={"identity": "commutation of divided powers", "n_max": n_max, "field": field.canonical()})
    rs = root_system('A1')
    for top in range(n_max + 1):
        module = build_weyl_module(rs, (top,), field)
        degree = min(3, module.k_max)
        for idx in range(module.dimension):
            v = module.basis_vector(idx)
            for l in range(degree + 1):
                for k in range(degree + 1):
                    lhs, rhs = commutation_terms(module, l, k, v)
                    if not vectors_equal(lhs, rhs):
                        case.record(f'W({top}) l={l} k={k}', False, {
                            "vector": idx,
                            "lhs": witness_vector(lhs),
                            "rhs": witness_vector(rhs),
                        })
                        return case
    case.record('commutation of divided powers', True)
    return case


def _product_module(field: RingSpec) -> TwistedLoopModule:
    fd = folding('A3', 'flip')
    return twisted_evaluation_module(fd, (1, 1), 2, field)


def check_divided_power_product(field: RingSpec) -> CaseReport:
    """(x (x) t^r)^(k) (x (x) t^r)^(l) = binom(k + l; k) (x (x) t^r)^(k + l) on a twisted module."""
    case = CaseReport(case={"identity": "product of divided powers", "folding": "A3 flip", "field": field.canonical()})
    if field.characteristic == 2:
        case.skip('product of divided powers', 'not applicable')
        return case

    tm = _product_module(field)
    fd = tm.fd
    degree = min(3, tm.loop.k_max)
    for mu in fd.restricted_roots():
        for sign in (1, -1):
            for r in range(-fd.m, fd.m + 1):
                if not fd.has_weight(mu, -r):
                    continue
                for idx in range(tm.dimension):
                    v = tm.basis_vector(idx)
                    for k in range(1, degree):
                        for l in range(1, degree - k + 1):
                            lhs = apply_twisted(tm, twisted(mu, sign, r, k), apply_twisted(tm, twisted(mu, sign, r, l), v))
                            rhs = scale(apply_twisted(tm, twisted(mu, sign, r, k + l), v), from_int(tm.field, ncr(k + l, k)))
                            if not vectors_equal(lhs, rhs):
                                case.record(f'{list(mu)} sign={sign} r={r} k={k} l={l}', False, {
                                    "vector": idx,
                                    "lhs": witness_vector(lhs),
                                    "rhs": witness_vector(rhs),
                                })
                                return case
    case.record('product of divided powers', True)
    return case


def check_pth_power(field: RingSpec) -> CaseReport:
    """Over characteristic p the p-th power of a twisted divided power is zero."""
    case = CaseReport(case={"identity": "p-th power", "folding": "A3 flip", "field": field.canonical()})
    p = field.characteristic
    if p in (0, 2):
        case.skip('p-th power vanishes', 'not applicable')
        return case

    tm = _product_module(field)
    fd = tm.fd
    for mu in fd.restricted_roots():
        for sign in (1, -1):
            for r in range(-fd.m, fd.m + 1):
                if not fd.has_weight(mu, -r):
                    continue
                op = twisted(mu, sign, r, 1)
                for idx in range(tm.dimension):
                    w = tm.basis_vector(idx)
                    for _ in range(p):
                        w = apply_twisted(tm, op, w)
                    if w:
                        case.record(f'{list(mu)} sign={sign} r={r}', False, {"vector": idx, "image": witness_vector(w)})
                        return case
    case.record('p-th power vanishes', True)
    return case


def check_identities(n_max: int, fields: Sequence[RingSpec]) -> VerificationReport:
    report = VerificationReport(suite='identities')
    cases: List[CaseReport] = []

    start = time.perf_counter()
    cases.append(check_divided_power_sum(n_max))
    cases[-1].elapsed_ms = (time.perf_counter() - start) * 1000

    for field in fields:
        for check in (check_binomial_sum, check_commutation):
            start = time.perf_counter()
            cases.append(check(n_max, field))
            cases[-1].elapsed_ms = (time.perf_counter() - start) * 1000
        for single in (check_divided_power_product, check_pth_power):
            start = time.perf_counter()
            cases.append(single(field))
            cases[-1].elapsed_ms = (time.perf_counter() - start) * 1000

    report.cases.extend(cases)
    logger.info('identities through n = %s over %s fields: %s', n_max, len(fields), report.counts())
    return report
