"""
The restriction theorem for simple modules, checked empirically: the
restriction of V(omega) to the twisted loop algebra is simple with Drinfeld
polynomial pi, where omega comes from the standard decomposition of pi.
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging
import time

import attr

from ..coeffring import RingSpec, one
from ..exception import CharEqualsOrder, CharTwoA2n
from ..hypermod import build_simple_module
from ..linalg import LinearMap, Vector, closure, nullspace
from ..loopaction import (
    LoopOperator, TwistedLoopModule,
    adapted_twisted_basis, apply_twisted, evaluation_module, loop_tensor, restrict, twisted,
)
from ..lweights import LWeight, StandardDecomposition, change_field, evaluation_factors, extract_drinfeld, omega_from_pi, standard_decomposition
from ..rootfold import FoldingDatum, Weight
from .hw_relations import hw_relations_case
from .report import CaseReport, VerificationReport

logger = logging.getLogger(__name__)

WINDOW_CAP = 64


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class SimplicityVerdict:
    window: int
    rank: int
    singular: int
    dimension: int

    @property
    def simple(self) -> bool:
        return self.rank == self.dimension and self.singular == 1

    def outcome(self) -> Tuple[bool, int, int]:
        return (self.simple, self.rank, self.singular)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "window": self.window,
            "rank": self.rank,
            "singular_vectors": self.singular,
            "dimension": self.dimension,
        }


def omega_module(sd: StandardDecomposition, fd: FoldingDatum) -> TwistedLoopModule:
    """The restriction of the tensor product of the V(mu_k, a_k) of a standard decomposition."""
    cb = adapted_twisted_basis(fd).cb

    factors = [
        evaluation_module(build_simple_module(cb, mu, sd.field), a, cb)
        for mu, a in evaluation_factors(sd, fd)
    ]
    if not factors:
        trivial: Weight = tuple(0 for _ in range(fd.base.rank))
        factors = [evaluation_module(build_simple_module(cb, trivial, sd.field), one(sd.field), cb)]

    tm = restrict(loop_tensor(*factors), fd)
    logger.debug('V(omega) for %s blocks has dimension %s', len(sd.blocks), tm.dimension)
    return tm


def build_omega_module(pi: LWeight, fd: FoldingDatum, field: Optional[RingSpec] = None) -> TwistedLoopModule:
    _check_characteristic(fd, field or pi.field)
    return omega_module(standard_decomposition(pi, fd, field), fd)


def _check_characteristic(fd: FoldingDatum, field: RingSpec) -> None:
    p = field.characteristic
    if fd.m > 1 and p == fd.m:
        logger.warning('characteristic %s equals the order of the automorphism', p)
        raise CharEqualsOrder(f'characteristic {p} equals the order of the automorphism')
    if fd.is_a2n and p == 2:
        logger.warning('%s with its flip in characteristic 2', fd.base.name)
        raise CharTwoA2n(f'{fd.base.name} with its flip needs a characteristic other than 2')


def window_operators(tm: TwistedLoopModule, width: int, signs: Sequence[int] = (1, -1)) -> List[LoopOperator]:
    """Every (x^sign_{mu,-r} (x) t^r)^(k) with |r| <= width and k <= min(k_max, 3)."""
    fd = tm.fd
    top = min(tm.loop.k_max, 3)
    out = []
    for mu in fd.restricted_roots():
        for sign in signs:
            for r in range(-width, width + 1):
                if not fd.has_weight(mu, -r):
                    continue
                for k in range(1, top + 1):
                    out.append(twisted(mu, sign, r, k))
    return out


def _weight_spaces(tm: TwistedLoopModule) -> Dict[Weight, List[int]]:
    spaces: Dict[Weight, List[int]] = {}
    for idx in range(tm.dimension):
        spaces.setdefault(tm.restricted_weight(idx), []).append(idx)
    return spaces


def count_singular(tm: TwistedLoopModule, raising: Sequence[LoopOperator]) -> int:
    """The dimension of the space killed by every raising operator, weight space by weight space."""
    unit = one(tm.field)
    total = 0
    for indices in _weight_spaces(tm).values():
        rows: Dict[Tuple[int, int], Vector] = {}
        for number, op in enumerate(raising):
            for j in indices:
                for t, c in apply_twisted(tm, op, tm.basis_vector(j)).items():
                    rows.setdefault((number, t), {})[j] = c
        total += len(nullspace(rows.values(), indices, unit))
    return total


def simplicity_at(tm: TwistedLoopModule, width: int) -> SimplicityVerdict:
    operators = window_operators(tm, width)
    maps: List[LinearMap] = [lambda w, op=op: apply_twisted(tm, op, w) for op in operators]
    span = closure([tm.basis_vector(tm.hv)], maps, limit=tm.dimension)
    raising = [op for op in operators if op.sign == 1]
    return SimplicityVerdict(window=width, rank=span.rank, singular=count_singular(tm, raising), dimension=tm.dimension)


def simplicity(tm: TwistedLoopModule, blocks: int) -> SimplicityVerdict:
    """Doubles the window of loop degrees until the verdict agrees across two sizes."""
    width = max(tm.fd.m * blocks, tm.fd.m)
    previous = simplicity_at(tm, width)
    while width < WINDOW_CAP:
        width *= 2
        current = simplicity_at(tm, width)
        logger.debug('window %s: rank %s, %s singular vectors', width, current.rank, current.singular)
        if current.outcome() == previous.outcome():
            return current
        previous = current
    logger.warning('the closure did not stabilize below a window of %s', WINDOW_CAP)
    return previous


def restriction_case(pi: LWeight, fd: FoldingDatum, field: Optional[RingSpec] = None) -> List[CaseReport]:
    descriptor: Dict[str, Any] = {
        "type": fd.base.name,
        "m": fd.m,
        "pi": pi.to_dict(),
    }
    start = time.perf_counter()
    case = CaseReport(case=descriptor)

    _check_characteristic(fd, field or pi.field)
    sd = standard_decomposition(pi, fd, field)
    descriptor["omega"] = omega_from_pi(sd, fd).to_dict()
    tm = omega_module(sd, fd)
    descriptor["dimension"] = tm.dimension

    verdict = simplicity(tm, len(sd.blocks))
    case.record('restriction is simple', verdict.simple, verdict.to_dict())
    descriptor["window"] = verdict.window

    found = extract_drinfeld(tm)
    expected = change_field(pi, tm.field)
    case.record('Drinfeld polynomial is pi', found == expected, {"found": found.to_dict(), "expected": expected.to_dict()})
    case.elapsed_ms = (time.perf_counter() - start) * 1000

    return [case, hw_relations_case(tm, {**descriptor, "relations": "highest l-weight"})]


def check_restriction_theorem(pi: LWeight, field: Optional[RingSpec], fd: FoldingDatum) -> VerificationReport:
    report = VerificationReport(suite='restriction')
    report.cases.extend(restriction_case(pi, fd, field))
    logger.info('restriction of V(omega) for %s: %s', fd.base.name, report.counts())
    return report
