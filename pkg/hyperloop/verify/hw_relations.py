"""
Relations satisfied by the highest vector of a finite-dimensional
highest-l-weight module of the twisted loop algebra:

  (a) lambda0 lies in P_0^{sigma,+};
  (b) (x-_{mu,0} (x) t^(ms))^(k) v = 0 once k exceeds d_mu lambda(h_{mu,0});
  (c) Lambda^sigma_{i,+-r} v = 0 once r exceeds lambda(h_{i,0});
  (d) Lambda^sigma_{i,+-lambda(h_{i,0})} v is not zero.

d_mu is 2 for the short roots of A_2n and 1 otherwise.
"""

from typing import Any, Dict
import logging
import time

from ..exception import NotHighestLWeight
from ..hypermod import vectors_equal
from ..linalg import Vector
from ..loopaction import TwistedLoopModule, apply_twisted, lambda_sigma_series, twisted
from ..lweights import extract_drinfeld, minus
from ..rootfold import FoldingDatum, Root, h_mu_pairing, in_P0_sigma_plus
from .casegrid import ModuleSpec, build_twisted_module
from .report import CaseReport, VerificationReport, witness_vector

logger = logging.getLogger(__name__)

SHIFTS = (-1, 0, 1)
DIRECTIONS = (1, -1)


def d_mu(fd: FoldingDatum, mu: Root) -> int:
    return 2 if fd.is_a2n and fd.is_short(mu) else 1


def _check_lowering(case: CaseReport, tm: TwistedLoopModule, v: Vector) -> None:
    fd = tm.fd
    lam = tm.loop.highest_weight
    for mu in fd.restricted_roots():
        if not fd.has_weight(mu, 0):
            continue
        bound = d_mu(fd, mu) * h_mu_pairing(fd, lam, mu)
        for s in SHIFTS:
            for k in (bound + 1, bound + 2):
                image = apply_twisted(tm, twisted(mu, -1, fd.m * s, k), v)
                if not case.record(f'(b) mu={list(mu)} s={s} k={k}', not image, {"image": witness_vector(image)}):
                    return


def _check_series(case: CaseReport, tm: TwistedLoopModule, v: Vector) -> None:
    lam0 = tm.highest_weight
    pi = extract_drinfeld(tm)
    pi_minus = minus(pi)

    for i in range(tm.fd.rank0):
        top = lam0[i]
        for direction in DIRECTIONS:
            series = lambda_sigma_series(tm, v, i, direction, top + 2)
            for r in (top + 1, top + 2):
                case.record(f'(c) i={i} dir={direction} r={r}', not series[r], {"image": witness_vector(series[r])})
            case.record(f'(d) i={i} dir={direction} r={top}', bool(series[top]))

        minus_series = lambda_sigma_series(tm, v, i, -1, top)
        for r, c in enumerate(pi_minus.coefficients(i)):
            expected = {tm.hv: c} if c else {}
            case.record(
                f'minus series i={i} r={r}',
                vectors_equal(minus_series[r], expected),
                {"found": witness_vector(minus_series[r]), "expected": witness_vector(expected)},
            )


def hw_relations_case(tm: TwistedLoopModule, case: Dict[str, Any]) -> CaseReport:
    report = CaseReport(case=case)
    start = time.perf_counter()
    v = tm.basis_vector(tm.hv)

    report.record('(a) highest weight in P_0^{sigma,+}', in_P0_sigma_plus(tm.fd, tm.highest_weight), {
        "highest_weight": list(tm.highest_weight),
    })
    try:
        _check_lowering(report, tm, v)
        _check_series(report, tm, v)
    except NotHighestLWeight as e:
        report.record('highest l-weight vector', False, {"error": str(e)})

    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def check_hw_relations(spec: ModuleSpec) -> VerificationReport:
    report = VerificationReport(suite='hw')
    tm = build_twisted_module(spec)
    report.cases.append(hw_relations_case(tm, spec.to_dict()))
    logger.info('highest-l-weight relations on %s: %s', spec.to_dict(), report.counts())
    return report
