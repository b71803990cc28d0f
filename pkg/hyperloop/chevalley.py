from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
import functools
import itertools
import logging

import attr

from .coeffring import RingSpec, Scalar, char0, from_fraction, from_int, sqrt2, zeta, zero
from .exception import NotSl2
from .highest_weight import build_highest_weight_module
from .linalg import EchelonBasis, Matrix, Vector, commutator
from .rootfold import DiagramAutomorphism, DynkinSeries, FoldingDatum, Root, RootSystem

logger = logging.getLogger(__name__)

# ('x', +1 or -1, positive root index) or ('h', 0, node)
Symbol = Tuple[str, int, int]
LieElement = Dict[Symbol, Any]


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class Recipe:
    """x_alpha = [x_i, x_beta] / (p + 1), with p the length of the alpha_i-string below beta."""
    node: int
    beta: int
    p: int


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True, eq=False)
class ChevalleyBasis:
    rs: RootSystem
    recipes: Tuple[Optional[Recipe], ...]
    # N_{a,b} with [x+_a, x+_b] = N x+_{a+b}
    n_plus: Dict[Tuple[int, int], int]
    # [x+_a, x-_b] = c x+_{a-b} or c x-_{b-a}
    mixed: Dict[Tuple[int, int], int]
    coroots: Tuple[Tuple[int, ...], ...]
    # x_alpha of this basis is signs[alpha] times the recursively built one
    signs: Tuple[int, ...]
    sigma: Optional[DiagramAutomorphism] = None
    # sigma-hat(x_alpha) = sigma_signs[alpha] x_{sigma(alpha)}
    sigma_signs: Tuple[int, ...] = ()

    def structure_constant(self, a: int, b: int) -> int:
        return self.n_plus.get((a, b), 0)

    def symbols(self) -> List[Symbol]:
        n_roots = len(self.rs.positive_roots)
        return (
            [('x', 1, a) for a in range(n_roots)]
            + [('h', 0, i) for i in range(self.rs.rank)]
            + [('x', -1, a) for a in range(n_roots)]
        )

    def h_root(self, a: int) -> LieElement:
        return {('h', 0, i): c for i, c in enumerate(self.coroots[a]) if c}

    def bracket_symbols(self, s: Symbol, t: Symbol) -> Dict[Symbol, int]:  # noqa: C901
        rs = self.rs
        kind_s, sign_s, a = s
        kind_t, sign_t, b = t

        if kind_s == 'h' and kind_t == 'h':
            return {}

        if kind_s == 'h':
            value = rs.root_labels(rs.positive_roots[b])[a] * sign_t
            return {t: value} if value else {}

        if kind_t == 'h':
            return {sym: -c for sym, c in self.bracket_symbols(t, s).items()}

        if sign_s == sign_t:
            total = tuple(x + y for x, y in zip(rs.positive_roots[a], rs.positive_roots[b]))
            if not rs.is_positive_root(total):
                return {}
            c = self.n_plus[(a, b)]
            return {('x', sign_s, rs.index_of(total)): c if sign_s == 1 else -c}

        if sign_s == -1:
            return {sym: -c for sym, c in self.bracket_symbols(t, s).items()}

        if a == b:
            return dict(self.h_root(a))

        c = self.mixed.get((a, b))
        if c is None:
            return {}

        diff = tuple(x - y for x, y in zip(rs.positive_roots[a], rs.positive_roots[b]))
        if rs.is_positive_root(diff):
            return {('x', 1, rs.index_of(diff)): c}
        return {('x', -1, rs.index_of(tuple(-x for x in diff))): c}

    def bracket(self, u: LieElement, v: LieElement) -> LieElement:
        out: LieElement = {}
        for s, cs in u.items():
            for t, ct in v.items():
                for sym, c in self.bracket_symbols(s, t).items():
                    value = out.get(sym, 0) + cs * ct * c
                    if value:
                        out[sym] = value
                    else:
                        out.pop(sym, None)
        return out

    def to_dict(self) -> Dict[str, Any]:
        roots = self.rs.positive_roots
        return {
            "type": self.rs.name,
            "structure_constants": [
                {"alpha": list(roots[a]), "beta": list(roots[b]), "N": n}
                for (a, b), n in sorted(self.n_plus.items())
            ],
            "coroots": [list(c) for c in self.coroots],
        }


def root_recipes(rs: RootSystem) -> Tuple[Optional[Recipe], ...]:
    recipes: List[Optional[Recipe]] = []
    for coords in rs.positive_roots:
        if sum(coords) == 1:
            recipes.append(None)
            continue
        for i in range(rs.rank):
            beta = tuple(c - (1 if j == i else 0) for j, c in enumerate(coords))
            if rs.is_positive_root(beta):
                p = 0
                while rs.is_positive_root(tuple(c - (p + 1) * (1 if j == i else 0) for j, c in enumerate(beta))):
                    p += 1
                recipes.append(Recipe(node=i, beta=rs.index_of(beta), p=p))
                break
    return tuple(recipes)


def root_operators(
    rs: RootSystem,
    recipes: Sequence[Optional[Recipe]],
    raising: Sequence[Matrix],
    lowering: Sequence[Matrix],
) -> Tuple[List[Matrix], List[Matrix]]:
    """The matrices of x+_alpha and x-_alpha on a module, given those of the simple generators."""
    ups: List[Matrix] = []
    downs: List[Matrix] = []
    for coords, recipe in zip(rs.positive_roots, recipes):
        if recipe is None:
            i = coords.index(1)
            ups.append(raising[i])
            downs.append(lowering[i])
            continue
        scale = Fraction(1, recipe.p + 1)
        ups.append(commutator(raising[recipe.node], ups[recipe.beta], scale))
        downs.append(commutator(downs[recipe.beta], lowering[recipe.node], scale))
    return ups, downs


def _witness(matrix: Matrix) -> Optional[Tuple[int, int, Any]]:
    for col in sorted(matrix):
        column = matrix[col]
        for row in sorted(column):
            return col, row, column[row]
    return None


def _ratio(product: Matrix, target: Matrix) -> int:
    """The integer c with product = c * target, read at one nonzero entry of target."""
    witness = _witness(target)
    assert witness is not None
    col, row, val = witness
    value = product.get(col, {}).get(row, Fraction(0)) / val
    assert Fraction(value).denominator == 1, f'non-integral structure constant {value}'
    return int(value)


@functools.lru_cache(maxsize=None)
def structure_constants(rs: RootSystem) -> ChevalleyBasis:
    """A Chevalley basis realized on the adjoint module V(theta)."""
    adjoint = build_highest_weight_module(rs, rs.root_labels(rs.highest_root))
    assert adjoint.dimension == rs.dimension

    recipes = root_recipes(rs)
    ups, downs = root_operators(rs, recipes, adjoint.raising, adjoint.lowering)
    roots = rs.positive_roots

    n_plus: Dict[Tuple[int, int], int] = {}
    mixed: Dict[Tuple[int, int], int] = {}
    for a, b in itertools.product(range(len(roots)), repeat=2):
        total = tuple(x + y for x, y in zip(roots[a], roots[b]))
        if rs.is_positive_root(total):
            n_plus[(a, b)] = _ratio(commutator(ups[a], ups[b]), ups[rs.index_of(total)])

        if a == b:
            continue
        diff = tuple(x - y for x, y in zip(roots[a], roots[b]))
        if rs.is_positive_root(diff):
            mixed[(a, b)] = _ratio(commutator(ups[a], downs[b]), ups[rs.index_of(diff)])
        elif rs.is_positive_root(tuple(-x for x in diff)):
            mixed[(a, b)] = _ratio(commutator(ups[a], downs[b]), downs[rs.index_of(tuple(-x for x in diff))])

    logger.debug('structure constants of %s: %s nonzero N', rs.name, len(n_plus))

    return ChevalleyBasis(
        rs=rs,
        recipes=recipes,
        n_plus=n_plus,
        mixed=mixed,
        coroots=tuple(rs.coroot_coords(r) for r in roots),
        signs=tuple(1 for _ in roots),
    )


def adapted_basis(cb: ChevalleyBasis, sigma: DiagramAutomorphism) -> ChevalleyBasis:
    """
    Re-signs the root vectors so that the automorphism with x_i -> x_sigma(i)
    maps x_alpha to +x_sigma(alpha) off the fixed roots.
    """
    if cb.sigma == sigma:
        return cb
    assert cb.sigma is None, "re-sign the unadapted basis"

    rs = cb.rs
    roots = rs.positive_roots
    images = [rs.index_of(sigma.apply_root(r)) for r in roots]

    hat = []
    for a, recipe in enumerate(cb.recipes):
        if recipe is None:
            hat.append(1)
            continue
        node_image = rs.index_of(rs.simple_root(sigma(recipe.node)))
        n = cb.n_plus[(node_image, images[recipe.beta])]
        value = Fraction(hat[recipe.beta] * n, recipe.p + 1)
        assert value in (1, -1), f'sigma does not map x_{roots[a]} to a signed root vector'
        hat.append(int(value))

    t = [0] * len(roots)
    for a in range(len(roots)):
        if t[a]:
            continue
        t[a] = 1
        current = a
        while images[current] != a:
            t[images[current]] = t[current] * hat[current]
            current = images[current]

    sigma_signs = []
    for a in range(len(roots)):
        # after re-signing: sigma-hat(x'_a) = t_a hat_a t_{sigma a} x'_{sigma a}
        sigma_signs.append(t[a] * hat[a] * t[images[a]])

    def resign(table: Dict[Tuple[int, int], int], combine: Any) -> Dict[Tuple[int, int], int]:
        return {key: value * t[key[0]] * t[key[1]] * t[combine(*key)] for key, value in table.items()}

    def total(a: int, b: int) -> int:
        return rs.index_of(tuple(x + y for x, y in zip(roots[a], roots[b])))

    def difference(a: int, b: int) -> int:
        diff = tuple(x - y for x, y in zip(roots[a], roots[b]))
        if not rs.is_positive_root(diff):
            diff = tuple(-x for x in diff)
        return rs.index_of(diff)

    adapted = ChevalleyBasis(
        rs=rs,
        recipes=cb.recipes,
        n_plus=resign(cb.n_plus, total),
        mixed=resign(cb.mixed, difference),
        coroots=cb.coroots,
        signs=tuple(s * x for s, x in zip(cb.signs, t)),
        sigma=sigma,
        sigma_signs=tuple(sigma_signs),
    )

    # sigma acts by -1 on the fixed root vectors of A_2n and trivially otherwise
    a2n = rs.series is DynkinSeries.A and rs.rank % 2 == 0 and sigma.order == 2
    expected = -1 if a2n else 1
    for a in range(len(roots)):
        if images[a] == a:
            assert sigma_signs[a] == expected, f"sigma acts on x_{roots[a]} by {sigma_signs[a]}"

    logger.debug("adapted %s to %s", rs.name, sigma.permutation)

    return adapted


def jacobi_violations(cb: ChevalleyBasis) -> List[Tuple[Symbol, Symbol, Symbol]]:
    symbols = cb.symbols()
    failures = []
    for s, t, u in itertools.combinations(symbols, 3):
        x, y, z = {s: 1}, {t: 1}, {u: 1}
        total: LieElement = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for sym, val in cb.bracket(a, cb.bracket(b, c)).items():
                total[sym] = total.get(sym, 0) + val
        if any(total.values()):
            failures.append((s, t, u))
    return failures


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class TwistedKey:
    kind: str
    sign: int
    mu: Root
    epsilon: int
    # node of I_0 for h_{i,epsilon}; -1 otherwise
    index: int = -1

    def sort_key(self) -> Tuple[Any, ...]:
        return (self.kind != 'x' or self.sign != 1, self.kind, -self.sign, sum(self.mu), tuple(-c for c in self.mu), self.index, self.epsilon)

    def describe(self) -> str:
        if self.kind == 'h':
            return f"h_{self.index},{self.epsilon}"
        sign = '+' if self.sign == 1 else '-'
        return f"x{sign}_{list(self.mu)},{self.epsilon}"


TwistedElement = Dict[TwistedKey, Scalar]


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True, eq=False)
class TwistedBasis:
    cb: ChevalleyBasis
    fd: FoldingDatum
    ring: RingSpec
    keys: Tuple[TwistedKey, ...]
    elements: Dict[TwistedKey, LieElement]
    classes: Dict[Tuple[Any, ...], Tuple[Tuple[TwistedKey, ...], Dict[Symbol, int], EchelonBasis]]

    @property
    def m(self) -> int:
        return self.fd.m

    def x_root(self, alpha: int, sign: int, eps: int) -> LieElement:
        """x^sign_{alpha,eps} for any positive root alpha."""
        return _x_root(self.cb, self.fd, self.ring, alpha, sign, eps)

    def hbar(self, alpha: int, eps: int) -> LieElement:
        return _hbar(self.cb, self.fd, self.ring, alpha, eps)

    def h_node(self, node: int, eps: int) -> LieElement:
        return _h_node(self.cb, self.fd, self.ring, node, eps)

    def h_mu(self, mu: Sequence[int], eps: int) -> LieElement:
        """h_{mu,eps} = h_{alpha,eps} for the alpha of O restricting to mu."""
        alpha = self.fd.representative(mu)
        return _halve_if_short(self.fd, self.ring, alpha, self.hbar(alpha, eps))

    def x_key(self, mu: Sequence[int], sign: int, eps: int) -> TwistedKey:
        return TwistedKey(kind='x', sign=sign, mu=tuple(mu), epsilon=eps % self.m)

    def h_key(self, node: int, eps: int) -> TwistedKey:
        return TwistedKey(kind='h', sign=0, mu=(), epsilon=eps % self.m, index=node)

    def element(self, key: TwistedKey) -> LieElement:
        return self.elements.get(key, {})

    def lift(self, combo: TwistedElement) -> LieElement:
        out: LieElement = {}
        for key, c in combo.items():
            for sym, val in self.element(key).items():
                value = out.get(sym, zero(self.ring)) + c * val
                if value:
                    out[sym] = value
                else:
                    out.pop(sym, None)
        return out

    def expand(self, element: LieElement) -> TwistedElement:
        """Coordinates of a Lie algebra element over the twisted basis."""
        grouped: Dict[Tuple[Any, ...], Vector] = {}
        for sym, c in element.items():
            if not c:
                continue
            cls = self._class_of(sym)
            keys, positions, _ = self.classes[cls]
            grouped.setdefault(cls, {})[positions[sym]] = _as_scalar(self.ring, c)

        out: TwistedElement = {}
        for cls, vector in grouped.items():
            keys, _, echelon = self.classes[cls]
            combo = echelon.express(vector)
            assert combo is not None, f'{vector} is outside the span of {keys}'
            for label, c in combo.items():
                if c:
                    out[keys[label]] = _as_scalar(self.ring, c)
        return out

    def _class_of(self, sym: Symbol) -> Tuple[Any, ...]:
        kind, sign, idx = sym
        if kind == 'h':
            return ('h',)
        return ('x', sign, self.fd.restriction[idx])

    def bracket(self, a: TwistedElement, b: TwistedElement) -> TwistedElement:
        return self.expand(self.cb.bracket(self.lift(a), self.lift(b)))

    def grade_of(self, key: TwistedKey) -> int:
        return key.epsilon

    def pairing(self, nu: Sequence[int], mu: Sequence[int]) -> Scalar:
        """nu(h_{mu,0}) for a restricted weight nu given by its values on the h_{i,0}."""
        h = self.h_mu(mu, 0)
        coords = self.expand(h)
        total = zero(self.ring)
        for key, c in coords.items():
            assert key.kind == 'h' and key.epsilon == 0
            total = total + c * nu[key.index]
        return total

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ring": self.ring.canonical(),
            "elements": {
                key.describe(): {_describe_symbol(self.cb, sym): c.canonical() for sym, c in sorted(self.element(key).items())}
                for key in self.keys
            },
        }


def _describe_symbol(cb: ChevalleyBasis, sym: Symbol) -> str:
    kind, sign, idx = sym
    if kind == 'h':
        return f"h_{idx}"
    return f"x{'+' if sign == 1 else '-'}_{list(cb.rs.positive_roots[idx])}"


def _as_scalar(ring: RingSpec, c: Any) -> Scalar:
    if isinstance(c, Scalar):
        return c
    return from_fraction(ring, Fraction(c))


def _zeta_power(ring: RingSpec, m: int, k: int) -> Scalar:
    if m == 1:
        return from_int(ring, 1)
    return zeta(ring) ** (k % m)


def _sum_into(out: LieElement, element: LieElement, c: Scalar) -> None:
    for sym, val in element.items():
        value = out.get(sym, zero(c.ring)) + c * val
        if value:
            out[sym] = value
        else:
            out.pop(sym, None)


def _a2n_partner_sum_is_root(fd: FoldingDatum, alpha: int) -> bool:
    orbit = fd.root_orbits[alpha]
    if len(orbit) != 2:
        return False
    roots = fd.base.positive_roots
    total = tuple(x + y for x, y in zip(roots[orbit[0]], roots[orbit[1]]))
    return fd.base.is_positive_root(total)


def _x_root(cb: ChevalleyBasis, fd: FoldingDatum, ring: RingSpec, alpha: int, sign: int, eps: int) -> LieElement:
    m = fd.m
    eps %= m
    out: LieElement = {}
    orbit = fd.root_orbits[alpha]

    if fd.is_a2n:
        if len(orbit) == 1:
            if eps == 1:
                out[('x', sign, alpha)] = from_int(ring, 1)
            return out
        partner = orbit[1]
        factor = sqrt2(ring) if _a2n_partner_sum_is_root(fd, alpha) else from_int(ring, 1)
        _sum_into(out, {('x', sign, alpha): 1}, factor)
        _sum_into(out, {('x', sign, partner): 1}, factor * (-1) ** eps)
        return out

    if len(orbit) == 1:
        if eps == 0:
            out[('x', sign, alpha)] = from_int(ring, 1)
        return out

    for j in range(m):
        _sum_into(out, {('x', sign, fd.sigma_power(alpha, j)): 1}, _zeta_power(ring, m, j * eps))
    return out


def _hbar(cb: ChevalleyBasis, fd: FoldingDatum, ring: RingSpec, alpha: int, eps: int) -> LieElement:
    m = fd.m
    eps %= m
    out: LieElement = {}
    orbit = fd.root_orbits[alpha]

    if len(orbit) == 1:
        if eps == 0:
            _sum_into(out, cb.h_root(alpha), from_int(ring, 1))
        return out

    if fd.is_a2n:
        partner = orbit[1]
        factor = from_int(ring, 2 if _a2n_partner_sum_is_root(fd, alpha) else 1)
        _sum_into(out, cb.h_root(alpha), factor)
        _sum_into(out, cb.h_root(partner), factor * (-1) ** eps)
        return out

    for j in range(m):
        _sum_into(out, cb.h_root(fd.sigma_power(alpha, j)), _zeta_power(ring, m, j * eps))
    return out


def _halve_if_short(fd: FoldingDatum, ring: RingSpec, alpha: int, element: LieElement) -> LieElement:
    if fd.is_a2n and _a2n_partner_sum_is_root(fd, alpha):
        half = from_fraction(ring, Fraction(1, 2))
        return {sym: half * c for sym, c in element.items()}
    return element


def _h_node(cb: ChevalleyBasis, fd: FoldingDatum, ring: RingSpec, node: int, eps: int) -> LieElement:
    o = fd.o_map[node]
    alpha = fd.base.index_of(fd.base.simple_root(o))
    return _halve_if_short(fd, ring, alpha, _hbar(cb, fd, ring, alpha, eps))


def twisted_basis(cb: ChevalleyBasis, fd: FoldingDatum) -> TwistedBasis:
    if cb.sigma != fd.sigma:
        cb = adapted_basis(cb, fd.sigma)

    ring = char0(fd.m, with_sqrt2=fd.is_a2n)
    keys: List[TwistedKey] = []
    elements: Dict[TwistedKey, LieElement] = {}

    for alpha in fd.representatives:
        mu = fd.restriction[alpha]
        for sign in (1, -1):
            for eps in range(fd.m):
                element = _x_root(cb, fd, ring, alpha, sign, eps)
                if element:
                    key = TwistedKey(kind='x', sign=sign, mu=mu, epsilon=eps)
                    keys.append(key)
                    elements[key] = element

    for node in range(fd.rank0):
        for eps in range(fd.m):
            element = _h_node(cb, fd, ring, node, eps)
            if element:
                key = TwistedKey(kind='h', sign=0, mu=(), epsilon=eps, index=node)
                keys.append(key)
                elements[key] = element

    keys.sort(key=lambda k: k.sort_key())
    assert len(keys) == cb.rs.dimension, f'twisted basis has {len(keys)} elements, expected {cb.rs.dimension}'

    classes: Dict[Tuple[Any, ...], Tuple[Tuple[TwistedKey, ...], Dict[Symbol, int], EchelonBasis]] = {}
    grouped: Dict[Tuple[Any, ...], List[TwistedKey]] = {}
    for key in keys:
        cls: Tuple[Any, ...] = ('h',) if key.kind == 'h' else ('x', key.sign, key.mu)
        grouped.setdefault(cls, []).append(key)

    for cls, members in grouped.items():
        positions: Dict[Symbol, int]
        if cls[0] == 'h':
            positions = {('h', 0, i): i for i in range(cb.rs.rank)}
        else:
            _, sign, mu = cls
            alpha = fd.representative(mu)
            positions = {('x', sign, beta): pos for pos, beta in enumerate(sorted(fd.root_orbits[alpha]))}
        echelon = EchelonBasis(track=True)
        for key in members:
            inserted = echelon.insert({positions[sym]: c for sym, c in elements[key].items()})
            assert inserted, f'{key.describe()} is dependent on the other twisted basis elements'
        classes[cls] = (tuple(members), positions, echelon)

    logger.debug('twisted basis of %s over %s: %s elements', cb.rs.name, ring.canonical(), len(keys))

    return TwistedBasis(cb=cb, fd=fd, ring=ring, keys=tuple(keys), elements=elements, classes=classes)


def reconstruct(tb: TwistedBasis, alpha: int, sign: int) -> LieElement:
    """
    (1/Gamma_alpha) times the sum over epsilon of x_{alpha,epsilon}. For the
    short roots of A_2n the sum also carries the sqrt(2) of the twisted
    normalization, which is divided out here.
    """
    fd = tb.fd
    ring = tb.ring
    gamma = fd.gamma[alpha]
    total: LieElement = {}
    for eps in range(fd.m):
        _sum_into(total, tb.x_root(alpha, sign, eps), from_int(ring, 1))

    factor = from_fraction(ring, Fraction(1, gamma))
    if fd.is_a2n and _a2n_partner_sum_is_root(fd, alpha):
        factor = factor / sqrt2(ring)
    return {sym: factor * c for sym, c in total.items() if c}


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True, eq=False)
class Sl2Triple:
    mu: Root
    epsilon: int
    e: TwistedElement
    f: TwistedElement
    h: TwistedElement
    # h = h_factor * h_{mu,0}, or h_{mu/2,0} for mu in 2R_s
    h_factor: Scalar


def sl2_triple(tb: TwistedBasis, mu: Sequence[int], eps: int) -> Sl2Triple:
    fd = tb.fd
    m = fd.m
    mu = tuple(mu)
    e_key = tb.x_key(mu, 1, eps)
    f_key = tb.x_key(mu, -1, -eps)

    if e_key not in tb.elements or f_key not in tb.elements:
        raise NotSl2(f'x+_{list(mu)},{eps % m} and x-_{list(mu)},{(-eps) % m} do not both exist')

    one = from_int(tb.ring, 1)
    e = {e_key: one}
    f = {f_key: one}
    h_raw = tb.bracket(e, f)
    he = tb.bracket(h_raw, e)

    if set(he) != {e_key}:
        raise NotSl2(f'[[e, f], e] is not a multiple of e for {list(mu)}, {eps % m}')

    c = he[e_key]
    scale = from_int(tb.ring, 2) / c
    f = {f_key: scale}
    h = {key: scale * val for key, val in h_raw.items()}

    hf = tb.bracket(h, f)
    if set(hf) != {f_key} or hf[f_key] != f[f_key] * (-2):
        raise NotSl2(f'[h, f] is not -2f for {list(mu)}, {eps % m}')

    if fd.is_double_short(mu):
        half = tuple(x // 2 for x in mu)
        reference = tb.expand(tb.h_mu(half, 0))
    else:
        reference = tb.expand(tb.h_mu(mu, 0))

    key, ref_val = next(iter(sorted(reference.items(), key=lambda kv: kv[0].sort_key())))
    h_factor = h.get(key, zero(tb.ring)) / ref_val
    assert all(h.get(k, zero(tb.ring)) == h_factor * v for k, v in reference.items()), 'h must be a multiple of h_{mu,0}'

    return Sl2Triple(mu=mu, epsilon=eps % m, e=e, f=f, h=h, h_factor=h_factor)


def twisted_jacobi_violations(tb: TwistedBasis, keys: Optional[Iterable[TwistedKey]] = None) -> List[Tuple[TwistedKey, ...]]:
    chosen = list(keys) if keys is not None else list(tb.keys)
    one = from_int(tb.ring, 1)
    failures = []
    for a, b, c in itertools.combinations(chosen, 3):
        x, y, z = {a: one}, {b: one}, {c: one}
        total: LieElement = {}
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            _sum_into(total, tb.lift(tb.bracket(p, tb.bracket(q, r))), one)
        if total:
            failures.append((a, b, c))
    return failures


def grading_violations(tb: TwistedBasis) -> List[Tuple[TwistedKey, TwistedKey]]:
    one = from_int(tb.ring, 1)
    failures = []
    for a, b in itertools.product(tb.keys, repeat=2):
        target = (a.epsilon + b.epsilon) % tb.m
        result = tb.bracket({a: one}, {b: one})
        if any(key.epsilon != target for key in result):
            failures.append((a, b))
    return failures


def sigma_hat(cb: ChevalleyBasis, element: LieElement) -> LieElement:
    """The diagram automorphism of g, on an adapted basis."""
    assert cb.sigma is not None, 'sigma_hat needs an adapted basis'
    rs = cb.rs
    out: LieElement = {}
    for (kind, sign, idx), c in element.items():
        if kind == 'h':
            out[('h', 0, cb.sigma(idx))] = c
            continue
        image = rs.index_of(cb.sigma.apply_root(rs.positive_roots[idx]))
        out[('x', sign, image)] = c * cb.sigma_signs[idx]
    return out


def reconstruct_h(tb: TwistedBasis, alpha: int) -> LieElement:
    """(1/Gamma_alpha) times the sum over epsilon of hbar_{alpha,epsilon}, halved again for the short roots of A_2n."""
    fd = tb.fd
    ring = tb.ring
    total: LieElement = {}
    for eps in range(fd.m):
        _sum_into(total, tb.hbar(alpha, eps), from_int(ring, 1))

    factor = from_fraction(ring, Fraction(1, fd.gamma[alpha]))
    if fd.is_a2n and _a2n_partner_sum_is_root(fd, alpha):
        factor = factor / 2
    return {sym: factor * c for sym, c in total.items() if c}


def basis_relation_violations(tb: TwistedBasis) -> List[Tuple[int, int, str]]:
    """
    Every x_{alpha,eps} and hbar_{alpha,eps} is a zeta^-eps eigenvector of
    sigma, off the fixed roots x_{sigma(alpha),eps} = zeta^-eps x_{alpha,eps},
    and summing over eps gives back x_alpha and h_alpha.

    Sign 0 in a failure stands for hbar.
    """
    fd = tb.fd
    cb = tb.cb
    one = from_int(tb.ring, 1)
    failures = []
    for alpha in range(len(fd.base.positive_roots)):
        image = fd.sigma_power(alpha, 1)
        for sign in (1, -1, 0):
            for eps in range(fd.m):
                element = tb.hbar(alpha, eps) if sign == 0 else tb.x_root(alpha, sign, eps)
                twisted: LieElement = {}
                _sum_into(twisted, element, _zeta_power(tb.ring, fd.m, -eps))

                moved: LieElement = {}
                _sum_into(moved, sigma_hat(cb, element), one)
                if moved != twisted:
                    failures.append((alpha, sign, f'sigma eigenvalue at epsilon {eps}'))

                if image == alpha:
                    continue
                shifted = tb.hbar(image, eps) if sign == 0 else tb.x_root(image, sign, eps)
                if shifted != twisted:
                    failures.append((alpha, sign, f'sigma relation at epsilon {eps}'))

            if sign == 0:
                expected = {sym: from_int(tb.ring, c) for sym, c in cb.h_root(alpha).items()}
                rebuilt = reconstruct_h(tb, alpha)
            else:
                expected = {('x', sign, alpha): one}
                rebuilt = reconstruct(tb, alpha, sign)
            if rebuilt != expected:
                failures.append((alpha, sign, 'reconstruction'))
    return failures
