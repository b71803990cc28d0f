"""
Divided powers of the loop algebra g[t, 1/t] and of its twisted subalgebra
acting on tensor products of evaluation modules.

A LoopModule is a tensor product of g-modules V_j, each evaluated at a
nonzero point a_j: x (x) t^r acts on V_j as a_j^r x. Basis vectors are
mixed-radix indices over the factors, the first factor most significant.
Twisted operators act on the restriction of a LoopModule by rewriting them
through the non-twisted ones, applied right to left.
"""

from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple
import enum
import functools
import logging

import attr

from .chevalley import ChevalleyBasis, LieElement, TwistedBasis, adapted_basis, structure_constants, twisted_basis
from .coeffring import (
    Embedding, RingKind, RingSpec, Scalar,
    char0, default_embedding, extend_for, field_embedding, from_int, one, poly_mul, reduce, zero,
)
from .exception import CharEqualsOrder, CharTwoA2n, DegreeOutOfRange, ZeroEvaluationPoint
from .hypermod import Module, apply_divided_power, base_change, build_simple_module, build_weyl_module
from .linalg import Vector, add_into
from .ncr import compositions, ncr, partitions_into
from .rootfold import FoldingDatum, Root, Weight, extend_weight, restrict_weight

logger = logging.getLogger(__name__)

Series = List[Scalar]
Product = Tuple['LoopOperator', ...]


@enum.unique
class OperatorKind(enum.Enum):
    Nontwisted = "nontwisted"
    Twisted = "twisted"
    Lambda = "lambda"
    LambdaSigma = "lambda_sigma"
    HBinom = "hbinom"


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class LoopOperator:
    """
    One generator of the integral form:

    - nontwisted: (x^sign_alpha (x) t^r)^(k), alpha a positive root index of g
    - twisted: (x^sign_{mu,-r} (x) t^r)^(k), mu a restricted root
    - lambda: Lambda_{alpha,r}, the direction given by the sign of r
    - lambda_sigma: Lambda^sigma_{i,r} for a node i of the folded diagram
    - hbinom: binom(h_i; k), or binom(h_{i,0}; k) on a twisted module
    """
    kind: OperatorKind
    alpha: int = -1
    mu: Root = ()
    node: int = -1
    sign: int = 1
    r: int = 0
    k: int = 1

    def describe(self) -> str:
        sign = '+' if self.sign == 1 else '-'
        if self.kind is OperatorKind.Nontwisted:
            return f"(x{sign}_{self.alpha} t^{self.r})^({self.k})"
        if self.kind is OperatorKind.Twisted:
            return f"(x{sign}_{list(self.mu)} t^{self.r})^({self.k})"
        if self.kind is OperatorKind.Lambda:
            return f"Lambda_{self.alpha},{self.r}"
        if self.kind is OperatorKind.LambdaSigma:
            return f"Lambda^s_{self.node},{self.r}"
        return f"binom(h_{self.node}; {self.k})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "alpha": self.alpha,
            "mu": list(self.mu),
            "node": self.node,
            "sign": self.sign,
            "r": self.r,
            "k": self.k,
        }


def nontwisted(alpha: int, sign: int, r: int, k: int) -> LoopOperator:
    return LoopOperator(kind=OperatorKind.Nontwisted, alpha=alpha, sign=sign, r=r, k=k)


def twisted(mu: Sequence[int], sign: int, r: int, k: int) -> LoopOperator:
    return LoopOperator(kind=OperatorKind.Twisted, mu=tuple(mu), sign=sign, r=r, k=k)


def lambda_op(alpha: int, r: int) -> LoopOperator:
    return LoopOperator(kind=OperatorKind.Lambda, alpha=alpha, r=r)


def lambda_sigma_op(node: int, r: int) -> LoopOperator:
    return LoopOperator(kind=OperatorKind.LambdaSigma, node=node, r=r)


def hbinom(node: int, k: int) -> LoopOperator:
    return LoopOperator(kind=OperatorKind.HBinom, node=node, k=k)


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True, eq=False)
class EvaluationFactor:
    module: Module
    point: Scalar


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True, eq=False)
class LoopModule:
    cb: ChevalleyBasis
    field: RingSpec
    factors: Tuple[EvaluationFactor, ...]
    weights: Tuple[Weight, ...]
    weight_spaces: Dict[Weight, Tuple[int, ...]]
    label: str = ''

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(f.module.dimension for f in self.factors)

    @property
    def dimension(self) -> int:
        return len(self.weights)

    @property
    def k_max(self) -> int:
        return sum(f.module.k_max for f in self.factors)

    @property
    def hv(self) -> int:
        return self.pack(tuple(f.module.hv for f in self.factors))

    @property
    def highest_weight(self) -> Weight:
        return self.weights[self.hv]

    def unpack(self, idx: int) -> Tuple[int, ...]:
        parts = []
        for d in reversed(self.dims):
            idx, rem = divmod(idx, d)
            parts.append(rem)
        return tuple(reversed(parts))

    def pack(self, parts: Sequence[int]) -> int:
        idx = 0
        for d, i in zip(self.dims, parts):
            idx = idx * d + i
        return idx

    def basis_vector(self, idx: int) -> Vector:
        return {idx: one(self.field)}

    def factor_weights(self, idx: int) -> Tuple[Weight, ...]:
        return tuple(f.module.weights[i] for f, i in zip(self.factors, self.unpack(idx)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": self.cb.rs.name,
            "field": self.field.canonical(),
            "label": self.label,
            "dimension": self.dimension,
            "factors": [
                {"module": f.module.label, "point": f.point.canonical()}
                for f in self.factors
            ],
        }


def _assemble(cb: ChevalleyBasis, field: RingSpec, factors: Sequence[EvaluationFactor], label: str) -> LoopModule:
    weights: List[Weight] = [tuple(0 for _ in range(cb.rs.rank))]
    for factor in factors:
        weights = [
            tuple(x + y for x, y in zip(w, mu))
            for w in weights
            for mu in factor.module.weights
        ]

    spaces: Dict[Weight, List[int]] = {}
    for idx, mu in enumerate(weights):
        spaces.setdefault(mu, []).append(idx)

    return LoopModule(
        cb=cb,
        field=field,
        factors=tuple(factors),
        weights=tuple(weights),
        weight_spaces={mu: tuple(ids) for mu, ids in spaces.items()},
        label=label,
    )


def evaluation_module(module: Module, point: Any, cb: Optional[ChevalleyBasis] = None) -> LoopModule:
    """V(a): the g-module `module` with x (x) t^r acting as a^r x."""
    if isinstance(point, int):
        point = from_int(module.field, point)
    if point.is_zero():
        raise ZeroEvaluationPoint(f'cannot evaluate {module.label} at zero')
    if cb is None:
        cb = structure_constants(module.rs)

    factor = EvaluationFactor(module=module, point=point)
    return _assemble(cb, module.field, [factor], f'{module.label}@{point.canonical()}')


def loop_tensor(*modules: LoopModule) -> LoopModule:
    """The tensor product, acted on through the coproduct."""
    if not modules:
        raise ValueError('the tensor product needs at least one factor')

    first = modules[0]
    for lm in modules[1:]:
        if lm.cb is not first.cb or lm.field != first.field:
            raise ValueError(f'cannot tensor {first.label} with {lm.label}: different bases or fields')

    factors = [f for lm in modules for f in lm.factors]
    return _assemble(first.cb, first.field, factors, '⊗'.join(lm.label for lm in modules))


@functools.lru_cache(maxsize=None)
def _factor_image(module: Module, alpha: int, sign: int, l: int, i: int) -> Tuple[Tuple[int, Scalar], ...]:
    return tuple(sorted(apply_divided_power(module, alpha, sign, l, {i: one(module.field)}).items()))


def _apply_nontwisted(lm: LoopModule, alpha: int, sign: int, r: int, k: int, v: Vector) -> Vector:
    """(x^sign_alpha (x) t^r)^(k) through the coproduct; degrees beyond a factor's range act as zero."""
    field_zero = zero(lm.field)
    out: Vector = {}
    for idx, c in v.items():
        states: Dict[Tuple[Tuple[int, ...], int], Scalar] = {((), 0): c}
        for factor, i in zip(lm.factors, lm.unpack(idx)):
            module = factor.module
            following: Dict[Tuple[Tuple[int, ...], int], Scalar] = {}
            for (prefix, used), coeff in states.items():
                for l in range(0, min(k - used, module.k_max) + 1):
                    image = _factor_image(module, alpha, sign, l, i)
                    if not image:
                        continue
                    scaled = coeff * factor.point ** (r * l)
                    for j, x in image:
                        key = (prefix + (j,), used + l)
                        following[key] = following.get(key, field_zero) + scaled * x
            states = {key: coeff for key, coeff in following.items() if coeff}

        for (parts, used), coeff in states.items():
            if used == k:
                add_into(out, {lm.pack(parts): coeff})
    return out


def _truncate(series: Sequence[Scalar], trunc: int) -> Series:
    return list(series[:trunc + 1])


def _binomial_series(c: Scalar, n: int, trunc: int) -> Series:
    """(1 - c u)^n up to u^trunc, for any integer n."""
    return [(-c) ** r * ncr(n, r) for r in range(trunc + 1)]


def _series_product(factors: Sequence[Series], field: RingSpec, trunc: int) -> Series:
    out: Series = [one(field)] + [zero(field)] * trunc
    for series in factors:
        out = _truncate(poly_mul(out, series), trunc)
    return out


def _newton(power_sums: Sequence[Scalar], field: RingSpec, trunc: int) -> Series:
    """
    The coefficients of exp(-sum_s P_s u^s / s), by n L_n = -sum_{s=1}^{n} P_s L_{n-s}.
    Needs n invertible in the field for every n <= trunc.
    """
    out: Series = [one(field)]
    for n in range(1, trunc + 1):
        total = zero(field)
        for s in range(1, n + 1):
            total = total + power_sums[s] * out[n - s]
        out.append(-total / n)
    return out


def _use_newton(field: RingSpec, trunc: int, method: str) -> bool:
    if method not in ('auto', 'newton', 'product'):
        raise ValueError(f'unknown series method {method!r}')
    if method == 'product':
        return False
    invertible = field.characteristic == 0 or trunc < field.characteristic
    if method == 'newton' and not invertible:
        raise ValueError(f'the exponential recursion divides by {field.characteristic} in {field.canonical()}')
    return invertible


def _diagonal(v: Vector, eigen: Callable[[int], Series], trunc: int) -> List[Vector]:
    out: List[Vector] = [{} for _ in range(trunc + 1)]
    for idx, c in v.items():
        for n, value in enumerate(eigen(idx)):
            if value:
                add_into(out[n], {idx: c * value})
    return out


def _lambda_eigen(lm: LoopModule, idx: int, alpha: int, direction: int, trunc: int, power: int, method: str) -> Series:
    root = lm.cb.rs.positive_roots[alpha]
    labels = [(f.point, lm.cb.rs.pairing(mu, root)) for f, mu in zip(lm.factors, lm.factor_weights(idx))]

    if _use_newton(lm.field, trunc, method):
        sums = [zero(lm.field)] + [
            sum((a ** (direction * power * s) * n for a, n in labels), zero(lm.field))
            for s in range(1, trunc + 1)
        ]
        return _newton(sums, lm.field, trunc)

    return _series_product(
        [_binomial_series(a ** (direction * power), n, trunc) for a, n in labels],
        lm.field,
        trunc,
    )


def lambda_series(lm: LoopModule, v: Vector, alpha: int, direction: int, trunc: int, method: str = 'auto') -> List[Vector]:
    """Lambda_{alpha,direction*r} v for r = 0..trunc."""
    return lambda_k_series(lm, v, alpha, 1, direction, trunc, method)


def lambda_k_series(lm: LoopModule, v: Vector, alpha: int, k: int, direction: int, trunc: int, method: str = 'auto') -> List[Vector]:
    """Lambda_{alpha,direction*r;k} v for r = 0..trunc, the image of Lambda under t -> t^k."""
    if trunc < 0:
        raise ValueError('the truncation degree must be nonnegative')
    return _diagonal(v, lambda idx: _lambda_eigen(lm, idx, alpha, direction, trunc, k, method), trunc)


def apply_hbinom(lm: LoopModule, node: int, k: int, v: Vector) -> Vector:
    out: Vector = {}
    for idx, c in v.items():
        add_into(out, {idx: c * ncr(lm.weights[idx][node], k)})
    return out


def eval_action(lm: LoopModule, op: LoopOperator, v: Vector) -> Vector:
    if op.kind is OperatorKind.Nontwisted:
        if op.k < 0 or op.k > lm.k_max:
            raise DegreeOutOfRange(f'divided power {op.k} is outside 0..{lm.k_max} for {lm.label}')
        if op.k == 0:
            return dict(v)
        return _apply_nontwisted(lm, op.alpha, op.sign, op.r, op.k, v)

    if op.kind is OperatorKind.Lambda:
        direction = 1 if op.r >= 0 else -1
        return lambda_series(lm, v, op.alpha, direction, abs(op.r))[abs(op.r)]

    if op.kind is OperatorKind.HBinom:
        return apply_hbinom(lm, op.node, op.k, v)

    raise ValueError(f'{op.describe()} does not act on an untwisted loop module')


def apply_product(lm: LoopModule, product: Sequence[LoopOperator], v: Vector) -> Vector:
    """The product of operators, the rightmost applied first."""
    w = dict(v)
    for op in reversed(product):
        if not w:
            break
        if op.kind is OperatorKind.Nontwisted:
            w = _apply_nontwisted(lm, op.alpha, op.sign, op.r, op.k, w)
        else:
            w = eval_action(lm, op, w)
    return w


def x_series_coefficient(alpha: int, s: int, direction: int, r: int) -> LoopOperator:
    """The coefficient of u^r in X_{alpha;s,direction}(u), r >= 1."""
    return nontwisted(alpha, -1, direction * (r + s), 1)


def x_series_power(coefficient: Callable[[int], LoopOperator], n: int, degree: int) -> Iterator[Product]:
    """
    The coefficient of u^degree in X(u)^(n) for X(u) = sum_{r >= 1} X_r u^r
    with commuting X_r: one product of divided powers per partition of
    degree into n parts.
    """
    for parts in partitions_into(degree, n):
        counts: Dict[int, int] = {}
        for part in parts:
            counts[part] = counts.get(part, 0) + 1
        yield tuple(
            attr.evolve(coefficient(part), k=count)
            for part, count in sorted(counts.items())
        )


def twisted_x_series_coefficient(fd: FoldingDatum, mu: Sequence[int], s: int, direction: int, d: int) -> LoopOperator:
    """
    The coefficient of u^d in X^sigma_{mu;s,direction}(u). When g is not of
    type A_2n and mu is long the series runs over multiples of m and s is
    the multiple m*s' of the defining formula.
    """
    alpha = fd.representative(mu)
    if not fd.is_a2n and fd.gamma[alpha] == 1:
        return twisted(mu, -1, direction * (fd.m * d + s), 1)
    return twisted(mu, -1, direction * (d + s), 1)


@functools.lru_cache(maxsize=None)
def adapted_twisted_basis(fd: FoldingDatum) -> TwistedBasis:
    """The twisted basis over the Chevalley basis adapted to the automorphism."""
    return twisted_basis(adapted_basis(structure_constants(fd.base), fd.sigma), fd)


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True, eq=False)
class TwistedLoopModule:
    loop: LoopModule
    fd: FoldingDatum
    tb: TwistedBasis
    # from the characteristic-zero ring of the twisted basis into loop.field
    embedding: Embedding

    @property
    def field(self) -> RingSpec:
        return self.loop.field

    @property
    def dimension(self) -> int:
        return self.loop.dimension

    @property
    def hv(self) -> int:
        return self.loop.hv

    @property
    def zeta(self) -> Scalar:
        return self.embedding.zeta

    @property
    def label(self) -> str:
        return f'{self.loop.label}|σ'

    def restricted_weight(self, idx: int) -> Weight:
        return restrict_weight(self.fd, self.loop.weights[idx])

    @property
    def highest_weight(self) -> Weight:
        return self.restricted_weight(self.hv)

    def basis_vector(self, idx: int) -> Vector:
        return self.loop.basis_vector(idx)

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.loop.to_dict(),
            "folding": self.fd.table_row(),
            "highest_weight": list(self.highest_weight),
            "embedding": self.embedding.to_dict(),
        }


def _lift(source: RingSpec, target: RingSpec) -> Callable[[Scalar], Scalar]:
    if source == target:
        return lambda s: s
    if source.kind is RingKind.Finite:
        return field_embedding(source, target)
    return lambda s: reduce(s, target)


def restrict(lm: LoopModule, fd: FoldingDatum) -> TwistedLoopModule:
    """
    V^sigma: the same space acted on by the twisted loop algebra. The field is
    extended when it lacks a primitive m-th root of unity, or a square root
    of 2 for A_2n.
    """
    p = lm.field.characteristic
    if fd.m > 1 and p == fd.m:
        raise CharEqualsOrder(f'characteristic {p} equals the order of the automorphism')
    if fd.is_a2n and p == 2:
        raise CharTwoA2n(f'{fd.base.name} with its flip needs a characteristic other than 2')

    tb = adapted_twisted_basis(fd)
    if tb.cb is not lm.cb:
        tb = twisted_basis(lm.cb, fd)
    if tb.cb is not lm.cb:
        raise ValueError(f'{lm.label} must be built on the Chevalley basis adapted to {list(fd.sigma.permutation)}')

    target = extend_for(lm.field, fd.m, sqrt2=fd.is_a2n)
    lift = _lift(lm.field, target)
    factors = [
        EvaluationFactor(module=base_change(f.module, target, lift), point=lift(f.point))
        for f in lm.factors
    ]
    loop = _assemble(lm.cb, target, factors, lm.label)

    embedding = default_embedding(tb.ring, target)
    logger.debug('restricted %s to the twisted loop algebra of %s over %s', lm.label, fd.base.name, target.canonical())

    return TwistedLoopModule(loop=loop, fd=fd, tb=tb, embedding=embedding)


def twisted_evaluation_module(fd: FoldingDatum, lam0: Sequence[int], point: Any, field: RingSpec, simple: bool = True) -> TwistedLoopModule:
    """The restriction of V(lambda, a), lambda the extension of lambda0 by zero off o(I_0)."""
    tb = adapted_twisted_basis(fd)
    lam = extend_weight(fd, lam0)
    module = build_simple_module(tb.cb, lam, field) if simple else build_weyl_module(tb.cb, lam, field)
    return restrict(evaluation_module(module, point, tb.cb), fd)


def _heisenberg_pair(tb: TwistedBasis, alpha: int) -> bool:
    fd = tb.fd
    orbit = fd.root_orbits[alpha]
    if not fd.is_a2n or len(orbit) != 2:
        return False
    roots = fd.base.positive_roots
    return fd.base.is_positive_root(tuple(x + y for x, y in zip(roots[orbit[0]], roots[orbit[1]])))


def expand_twisted_op(tb: TwistedBasis, op: LoopOperator, field: Optional[RingSpec] = None) -> List[Tuple[Scalar, Product]]:
    """
    (x^sign_{mu,-r} (x) t^r)^(k) as a combination of products of untwisted
    divided powers, coefficients in the ring of the twisted basis. An empty
    list is the zero operator.
    """
    assert op.kind is OperatorKind.Twisted
    fd = tb.fd
    eps = (-op.r) % fd.m
    alpha = fd.representative(op.mu)
    element = tb.x_root(alpha, op.sign, eps)
    unit = from_int(tb.ring, 1)

    if not element:
        return []
    if op.k == 0:
        return [(unit, ())]

    terms = [(idx, c) for (_, _, idx), c in sorted(element.items(), key=lambda kv: fd.root_orbits[alpha].index(kv[0][2]))]

    if len(terms) == 2 and _heisenberg_pair(tb, alpha):
        if field is not None and field.characteristic == 2:
            raise CharTwoA2n('the Heisenberg expansion divides by 2')
        return _heisenberg_terms(tb, terms, op)

    out: List[Tuple[Scalar, Product]] = []
    for parts in compositions(op.k, len(terms)):
        coeff = unit
        product = []
        for (idx, c), n in zip(terms, parts):
            if n:
                coeff = coeff * c ** n
                product.append(nontwisted(idx, op.sign, op.r, n))
        out.append((coeff, tuple(product)))
    return out


def _heisenberg_terms(tb: TwistedBasis, terms: Sequence[Tuple[int, Scalar]], op: LoopOperator) -> List[Tuple[Scalar, Product]]:
    """
    (x + y)^(n) = sum_k (-z/2)^((n - k)/2) sum_j x^(j) y^(k - j) for x = c1 x_a,
    y = c2 x_b and z = [x, y] central.
    """
    (a, c1), (b, c2) = terms
    bracket = tb.cb.bracket_symbols(('x', op.sign, a), ('x', op.sign, b))
    assert len(bracket) == 1
    (_, _, top), n_ab = next(iter(bracket.items()))
    z = c1 * c2 * n_ab
    half = -z / 2

    out: List[Tuple[Scalar, Product]] = []
    for j in range(op.k // 2 + 1):
        rest = op.k - 2 * j
        for q in range(rest + 1):
            coeff = half ** j * c1 ** q * c2 ** (rest - q)
            product = tuple(
                operator for operator in (
                    nontwisted(top, op.sign, 2 * op.r, j),
                    nontwisted(a, op.sign, op.r, q),
                    nontwisted(b, op.sign, op.r, rest - q),
                )
                if operator.k
            )
            out.append((coeff, product))
    return out


def _h_eigen(tm: TwistedLoopModule, element: LieElement, r: int, idx: int) -> Scalar:
    """The eigenvalue of h (x) t^r on a basis vector, h a combination of the h_i."""
    field = tm.field
    total = zero(field)
    for factor, mu in zip(tm.loop.factors, tm.loop.factor_weights(idx)):
        value = zero(field)
        for (kind, _, i), c in element.items():
            assert kind == 'h'
            value = value + tm.embedding(c) * mu[i]
        total = total + factor.point ** r * value
    return total


def apply_twisted(tm: TwistedLoopModule, op: LoopOperator, v: Vector) -> Vector:
    if op.kind is OperatorKind.HBinom:
        out: Vector = {}
        for idx, c in v.items():
            add_into(out, {idx: c * ncr(tm.restricted_weight(idx)[op.node], op.k)})
        return out

    if op.kind is OperatorKind.LambdaSigma:
        direction = 1 if op.r >= 0 else -1
        return lambda_sigma_series(tm, v, op.node, direction, abs(op.r))[abs(op.r)]

    if op.kind is not OperatorKind.Twisted:
        raise ValueError(f'{op.describe()} is not an operator of the twisted loop algebra')

    out = {}
    for coeff, product in expand_twisted_op(tm.tb, op, tm.field):
        w = dict(v)
        for factor in reversed(product):
            if not w:
                break
            w = _apply_nontwisted(tm.loop, factor.alpha, factor.sign, factor.r, factor.k, w)
        if w:
            add_into(out, w, tm.embedding(coeff))
    return out


def apply_twisted_product(tm: TwistedLoopModule, product: Sequence[LoopOperator], v: Vector) -> Vector:
    w = dict(v)
    for op in reversed(product):
        if not w:
            break
        w = apply_twisted(tm, op, w)
    return w


def _node_root(fd: FoldingDatum, node: int) -> Tuple[Root, int]:
    mu = fd.folded.simple_root(node)
    return mu, fd.representative(mu)


def _long_branch(fd: FoldingDatum, alpha: int) -> bool:
    return not fd.is_a2n and fd.gamma[alpha] == 1


def _lambda_sigma_eigen(tm: TwistedLoopModule, idx: int, mu: Root, direction: int, trunc: int, method: str) -> Series:
    fd = tm.fd
    field = tm.field
    alpha = fd.representative(mu)

    if _use_newton(field, trunc, method):
        sums = [zero(field)]
        for n in range(1, trunc + 1):
            if _long_branch(fd, alpha):
                h, r = tm.tb.h_mu(mu, 0), direction * fd.m * n
            else:
                h, r = tm.tb.h_mu(mu, (-direction * n) % fd.m), direction * n
            sums.append(_h_eigen(tm, h, r, idx))
        return _newton(sums, field, trunc)

    factors: List[Series] = []
    root_of = fd.base.positive_roots
    for factor, nu in zip(tm.loop.factors, tm.loop.factor_weights(idx)):
        a = factor.point
        if _long_branch(fd, alpha):
            factors.append(_binomial_series(a ** (direction * fd.m), fd.base.pairing(nu, root_of[alpha]), trunc))
            continue
        for j in range(fd.gamma[alpha]):
            beta = fd.sigma_power(alpha, j)
            c = tm.zeta ** ((-direction * j) % fd.m) * a ** direction
            factors.append(_binomial_series(c, fd.base.pairing(nu, root_of[beta]), trunc))
    return _series_product(factors, field, trunc)


def lambda_sigma_series(tm: TwistedLoopModule, v: Vector, node: int, direction: int, trunc: int, method: str = 'auto') -> List[Vector]:
    """Lambda^sigma_{i,direction*r} v for r = 0..trunc."""
    return lambda_sigma_root_series(tm, v, tm.fd.folded.simple_root(node), direction, trunc, method)


def lambda_sigma_root_series(tm: TwistedLoopModule, v: Vector, mu: Sequence[int], direction: int, trunc: int, method: str = 'auto') -> List[Vector]:
    """Lambda^sigma_{mu,direction*r} v for a restricted root mu of R_0, r = 0..trunc."""
    if trunc < 0:
        raise ValueError('the truncation degree must be nonnegative')
    root = tuple(mu)
    return _diagonal(v, lambda idx: _lambda_sigma_eigen(tm, idx, root, direction, trunc, method), trunc)


def ev_sigma_lambda(fd: FoldingDatum, lam0: Sequence[int], point: Scalar, node: int, r: int, sign: int) -> Scalar:
    """
    The eigenvalue of Lambda^sigma_{i,sign*r} on the highest weight vector of
    the twisted evaluation module of lambda0 at `point`.
    """
    lam = extend_weight(fd, lam0)
    _, alpha = _node_root(fd, node)
    rs = fd.base
    field = point.ring

    if _long_branch(fd, alpha):
        return (-(point ** (sign * fd.m))) ** r * ncr(rs.pairing(lam, rs.positive_roots[alpha]), r)

    zeta = default_embedding(char0(fd.m), field).zeta
    total = zero(field)
    orbit = [fd.sigma_power(alpha, j) for j in range(fd.m)]
    for parts in compositions(r, fd.m):
        term = one(field)
        for j, (beta, rj) in enumerate(zip(orbit, parts)):
            c = -(zeta ** ((-sign * j) % fd.m) * point ** sign)
            term = term * c ** rj * ncr(rs.pairing(lam, rs.positive_roots[beta]), rj)
        total = total + term
    return total
