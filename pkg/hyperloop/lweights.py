from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import enum
import logging

import attr
import sympy

from .coeffring import (
    RingSpec, Scalar,
    elements, extend_for, field_embedding, finite_field, find_roots, from_fraction, one, poly_mul, poly_trim,
    primitive_root_of_unity, reduce, square_root, zero,
)
from .exception import NotHighestLWeight, NotSplit, ZeroEvaluationPoint
from .loopaction import TwistedLoopModule, apply_twisted, lambda_sigma_series, twisted
from .rootfold import FoldingDatum, RootSystem, Weight

logger = logging.getLogger(__name__)

Context = Union[RootSystem, FoldingDatum]


@enum.unique
class Flavor(enum.Enum):
    Nontwisted = "nontwisted"
    Twisted = "twisted"


def _point_key(a: Scalar) -> Tuple[Any, ...]:
    return a.sort_key()


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class LWeight:
    """
    A dominant l-weight: per node, the polynomial prod (1 - a u) over its
    points a, kept sorted with multiplicity.
    """
    flavor: Flavor
    field: RingSpec
    points: Tuple[Tuple[Scalar, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.points)

    def coefficients(self, i: int) -> List[Scalar]:
        """Ascending coefficients of the i-th polynomial."""
        out = [one(self.field)]
        for a in self.points[i]:
            out = poly_mul(out, [one(self.field), -a])
        return out

    def polynomials(self) -> List[List[Scalar]]:
        return [self.coefficients(i) for i in range(self.rank)]

    def is_one(self) -> bool:
        return not any(self.points)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "flavor": self.flavor.value,
            "field": self.field.canonical(),
            "components": [
                {
                    "points": [a.canonical() for a in pts],
                    "coefficients": [c.canonical() for c in self.coefficients(i)],
                }
                for i, pts in enumerate(self.points)
            ],
        }


def _make(flavor: Flavor, field: RingSpec, points: Sequence[Sequence[Scalar]]) -> LWeight:
    return LWeight(
        flavor=flavor,
        field=field,
        points=tuple(tuple(sorted(pts, key=_point_key)) for pts in points),
    )


def _flavor(context: Context) -> Flavor:
    return Flavor.Twisted if isinstance(context, FoldingDatum) else Flavor.Nontwisted


def _rank(context: Context) -> int:
    return context.rank0 if isinstance(context, FoldingDatum) else context.rank


def node_is_long(fd: FoldingDatum, i: int) -> bool:
    """Whether the i-th twisted component is a polynomial in a^m: alpha_i long and g not of type A_2n."""
    return not fd.is_a2n and len(fd.node_orbits[i]) == 1


def one_lweight(context: Context, field: RingSpec) -> LWeight:
    return _make(_flavor(context), field, [() for _ in range(_rank(context))])


def evaluation_lweight(context: Context, mu: Sequence[int], a: Scalar) -> LWeight:
    """omega_{mu,a}, or omega^sigma_{mu,a} when the context is a folding."""
    if a.is_zero():
        raise ZeroEvaluationPoint('l-weights are evaluated at nonzero points')
    if len(mu) != _rank(context) or any(x < 0 for x in mu):
        raise ValueError(f'{list(mu)} is not a dominant weight of rank {_rank(context)}')

    points = []
    for i, n in enumerate(mu):
        b = a
        if isinstance(context, FoldingDatum) and node_is_long(context, i):
            b = a ** context.m
        points.append([b] * n)
    return _make(_flavor(context), a.ring, points)


def fundamental(context: Context, i: int, a: Scalar) -> LWeight:
    mu = [0] * _rank(context)
    mu[i] = 1
    return evaluation_lweight(context, mu, a)


def multiply(first: LWeight, second: LWeight) -> LWeight:
    if first.flavor is not second.flavor or first.field != second.field or first.rank != second.rank:
        raise ValueError('l-weights of different kinds cannot be multiplied')
    return _make(first.flavor, first.field, [a + b for a, b in zip(first.points, second.points)])


def minus(lw: LWeight) -> LWeight:
    """omega^-: every point a becomes 1/a."""
    return _make(lw.flavor, lw.field, [[a.inverse() for a in pts] for pts in lw.points])


def weight_of(lw: LWeight) -> Weight:
    """The weight by its values on the h_i (or h_{i,0}): the degrees of the polynomials."""
    return tuple(len(pts) for pts in lw.points)


def change_field(lw: LWeight, target: RingSpec) -> LWeight:
    if lw.field == target:
        return lw
    if lw.field.is_finite:
        embed = field_embedding(lw.field, target)
        return _make(lw.flavor, target, [[embed(a) for a in pts] for pts in lw.points])
    return _make(lw.flavor, target, [[reduce(a, target) for a in pts] for pts in lw.points])


def _splitting_degree(coeffs: Sequence[Scalar], field: RingSpec, limit: int = 12) -> Optional[int]:
    """The least degree of an extension of a finite field over which the polynomial splits."""
    if not field.is_finite:
        return None
    for j in range(2, limit + 1):
        target = finite_field(field.p, field.k * j)
        embed = field_embedding(field, target)
        _, split = find_roots([embed(c) for c in coeffs], target)
        if split:
            return field.k * j
    return None


def _rational_roots(coeffs: Sequence[Scalar], field: RingSpec) -> List[Scalar]:
    try:
        values = [c.to_fraction() for c in coeffs]
    except ValueError:
        return []
    u = sympy.symbols('u')
    poly = sympy.Poly(sum(sympy.Rational(v.numerator, v.denominator) * u ** i for i, v in enumerate(values)), u)
    return [from_fraction(field, Fraction(int(r.p), int(r.q))) for r in poly.ground_roots()]


def _points_of(coeffs: Sequence[Scalar], field: RingSpec, candidates: Optional[Sequence[Scalar]] = None) -> List[Scalar]:
    """The points a of a polynomial prod (1 - a u) with constant term 1."""
    f = poly_trim(coeffs)
    if not f or not f[0].is_one():
        raise ValueError('l-weight polynomials have constant term 1')
    if len(f) == 1:
        return []

    if candidates is None and not field.is_finite:
        candidates = _rational_roots(f, field)
    roots, split = find_roots(f, field, candidates)
    if not split:
        degree = _splitting_degree(f, field)
        raise NotSplit(
            f'{[c.canonical() for c in f]} does not split over {field.canonical()}',
            suggested_degree=degree,
        )
    return [r.inverse() for r in roots]


def from_polynomials(context: Context, polys: Sequence[Sequence[Scalar]], field: RingSpec) -> LWeight:
    """An l-weight from ascending coefficient lists, factored over `field`."""
    if len(polys) != _rank(context):
        raise ValueError(f'expected {_rank(context)} polynomials, got {len(polys)}')
    return _make(_flavor(context), field, [_points_of(p, field) for p in polys])


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class Block:
    point: Scalar
    # lambda_{k,eps} for eps = 0..m-1, by their values on the h_{i,0}
    weights: Tuple[Weight, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "point": self.point.canonical(),
            "weights": [list(w) for w in self.weights],
        }


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class StandardDecomposition:
    """pi = prod_k prod_eps omega^sigma_{lambda_{k,eps}, zeta^(m-eps) a_k}, the a_k^m pairwise distinct."""
    m: int
    field: RingSpec
    zeta: Scalar
    blocks: Tuple[Block, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "field": self.field.canonical(),
            "zeta": self.zeta.canonical(),
            "blocks": [b.to_dict() for b in self.blocks],
        }


def _mth_root(c: Scalar, m: int) -> Optional[Scalar]:
    if m == 1:
        return c
    field = c.ring
    if field.is_finite:
        return next((x for x in elements(field) if x ** m == c), None)
    if m == 2:
        return square_root(field, c)
    try:
        q = c.to_fraction()
    except ValueError:
        return None
    num, num_exact = sympy.integer_nthroot(abs(q.numerator), m)
    den, den_exact = sympy.integer_nthroot(q.denominator, m)
    if not (num_exact and den_exact):
        return None
    sign = -1 if q < 0 else 1
    return from_fraction(field, Fraction(sign * int(num), int(den)))


def standard_decomposition(pi: LWeight, fd: FoldingDatum, field: Optional[RingSpec] = None) -> StandardDecomposition:
    """
    Groups the points of a twisted l-weight by their m-th powers. Points of
    long components already are m-th powers. Within a block a_k is the least
    point of a short component, or the least m-th root when there is none.
    """
    if pi.flavor is not Flavor.Twisted or pi.rank != fd.rank0:
        raise ValueError('standard decompositions are taken of twisted l-weights of the folding')

    m = fd.m
    splitting = field or extend_for(pi.field, m, sqrt2=fd.is_a2n)
    lw = change_field(pi, splitting)
    zeta = primitive_root_of_unity(splitting, m)

    groups: Dict[Scalar, List[Tuple[int, Scalar, bool]]] = {}
    for i, pts in enumerate(lw.points):
        long = node_is_long(fd, i)
        for b in pts:
            key = b if long else b ** m
            groups.setdefault(key, []).append((i, b, long))

    blocks = []
    for key in sorted(groups, key=_point_key):
        members = groups[key]
        shorts = sorted((b for _, b, long in members if not long), key=_point_key)
        if shorts:
            a = shorts[0]
        else:
            root = _mth_root(key, m)
            if root is None:
                raise NotSplit(f'{key.canonical()} has no {m}-th root in {splitting.canonical()}', suggested_degree=splitting.k * m if splitting.is_finite else None)
            a = root

        weights = [[0] * fd.rank0 for _ in range(m)]
        for i, b, long in members:
            if long:
                weights[0][i] += 1
                continue
            eps = next(e for e in range(m) if zeta ** ((m - e) % m) * a == b)
            weights[eps][i] += 1
        blocks.append(Block(point=a, weights=tuple(tuple(w) for w in weights)))

    logger.debug('standard decomposition over %s: %s blocks', splitting.canonical(), len(blocks))
    return StandardDecomposition(m=m, field=splitting, zeta=zeta, blocks=tuple(blocks))


def reassemble(sd: StandardDecomposition, fd: FoldingDatum) -> LWeight:
    out = one_lweight(fd, sd.field)
    for block in sd.blocks:
        for eps, lam in enumerate(block.weights):
            if any(lam):
                out = multiply(out, evaluation_lweight(fd, lam, sd.zeta ** ((sd.m - eps) % sd.m) * block.point))
    return out


def evaluation_factors(sd: StandardDecomposition, fd: FoldingDatum) -> List[Tuple[Weight, Scalar]]:
    """(mu_k, a_k) with mu_k the sum over eps and i of lambda_{k,eps}(h_{i,0}) sigma^eps(omega_o(i))."""
    out = []
    for block in sd.blocks:
        mu = [0] * fd.base.rank
        for eps, lam in enumerate(block.weights):
            for i, e in enumerate(lam):
                node = fd.o_map[i]
                for _ in range(eps):
                    node = fd.sigma(node)
                mu[node] += e
        out.append((tuple(mu), block.point))
    return out


def omega_from_pi(sd: StandardDecomposition, fd: FoldingDatum) -> LWeight:
    out = one_lweight(fd.base, sd.field)
    for mu, a in evaluation_factors(sd, fd):
        out = multiply(out, evaluation_lweight(fd.base, mu, a))
    return out


def _drinfeld_candidates(tm: TwistedLoopModule) -> List[Scalar]:
    """Inverses of every point a Drinfeld polynomial of the module can have."""
    out = []
    for factor in tm.loop.factors:
        a = factor.point
        out.append((a ** tm.fd.m).inverse())
        for j in range(tm.fd.m):
            out.append((tm.zeta ** j * a).inverse())
    return out


def raising_window(tm: TwistedLoopModule) -> range:
    width = tm.fd.m * (len(tm.loop.factors) + 1)
    return range(-width, width + 1)


def check_highest(tm: TwistedLoopModule, v: Any) -> None:
    """Every raising twisted divided power in the window kills v."""
    fd = tm.fd
    for mu in fd.restricted_roots():
        for r in raising_window(tm):
            if not fd.has_weight(mu, -r):
                continue
            for k in range(1, min(tm.loop.k_max, 3) + 1):
                if apply_twisted(tm, twisted(mu, 1, r, k), v):
                    raise NotHighestLWeight(f'(x+_{list(mu)} t^{r})^({k}) does not kill the vector')


def extract_drinfeld(tm: TwistedLoopModule) -> LWeight:
    """The eigenvalues of the Lambda^sigma_i(u) on the highest vector, as polynomials."""
    v = tm.basis_vector(tm.hv)
    check_highest(tm, v)

    lam0 = tm.highest_weight
    field = tm.field
    candidates = None if field.is_finite else _drinfeld_candidates(tm)
    points = []
    for i in range(tm.fd.rank0):
        trunc = lam0[i] + 1
        series = lambda_sigma_series(tm, v, i, 1, trunc)
        coeffs = []
        for r, w in enumerate(series):
            if set(w) - {tm.hv}:
                raise NotHighestLWeight(f'Lambda^sigma_{i},{r} does not preserve the line of the highest vector')
            coeffs.append(w.get(tm.hv, zero(field)))
        if coeffs[-1]:
            raise NotHighestLWeight(f'Lambda^sigma_{i},{trunc} does not vanish on the highest vector')
        points.append(_points_of(coeffs[:-1], field, candidates))

    return _make(Flavor.Twisted, field, points)
