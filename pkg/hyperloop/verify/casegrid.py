from typing import Any, Dict, List, Optional, Tuple
import logging

import attr

from ..chevalley import structure_constants
from ..coeffring import RingSpec, from_int
from ..exception import ParseError, ZeroEvaluationPoint
from ..hypermod import build_simple_module
from ..loopaction import LoopModule, TwistedLoopModule, adapted_twisted_basis, evaluation_module, loop_tensor, restrict
from ..parse import parse_field
from ..rootfold import FoldingDatum, Weight, extend_weight, folding, root_system

logger = logging.getLogger(__name__)


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class FactorSpec:
    weight: Weight
    point: int

    def to_dict(self) -> Dict[str, Any]:
        return {"weight": list(self.weight), "point": self.point}


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class ModuleSpec:
    """
    A tensor product of simple evaluation modules. With an automorphism the
    weights are restricted weights, extended by zero off o(I_0), and the
    product is restricted to the twisted loop algebra.
    """
    type: str
    auto: Optional[str]
    field: RingSpec
    factors: Tuple[FactorSpec, ...]

    @property
    def twisted(self) -> bool:
        return self.auto is not None

    def folding(self) -> FoldingDatum:
        if self.auto is None:
            raise ValueError(f'{self.type} carries no automorphism')
        return folding(self.type, self.auto)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": self.type,
            "auto": self.auto,
            "field": self.field.canonical(),
            "factors": [f.to_dict() for f in self.factors],
        }


def module_spec(entry: Dict[str, Any]) -> ModuleSpec:
    try:
        factors = tuple(
            FactorSpec(weight=tuple(int(x) for x in f['weight']), point=int(f['point']))
            for f in entry['factors']
        )
        return ModuleSpec(
            type=str(entry['type']),
            auto=entry.get('auto'),
            field=parse_field(str(entry['field'])),
            factors=factors,
        )
    except (KeyError, TypeError) as e:
        raise ParseError(f'malformed module case {entry!r}: {e}') from e


def _factors(spec: ModuleSpec, fd: Optional[FoldingDatum]) -> List[LoopModule]:
    if fd is not None:
        cb = adapted_twisted_basis(fd).cb
    else:
        cb = structure_constants(root_system(spec.type))

    out = []
    for factor in spec.factors:
        point = from_int(spec.field, factor.point)
        if point.is_zero():
            raise ZeroEvaluationPoint(f'{factor.point} vanishes in {spec.field.canonical()}')
        weight = extend_weight(fd, factor.weight) if fd is not None else factor.weight
        module = build_simple_module(cb, weight, spec.field)
        out.append(evaluation_module(module, point, cb))
    return out


def build_loop_module(spec: ModuleSpec) -> LoopModule:
    return loop_tensor(*_factors(spec, None))


def build_twisted_module(spec: ModuleSpec) -> TwistedLoopModule:
    fd = spec.folding()
    tm = restrict(loop_tensor(*_factors(spec, fd)), fd)
    logger.debug('twisted case module %s of dimension %s', tm.label, tm.dimension)
    return tm
