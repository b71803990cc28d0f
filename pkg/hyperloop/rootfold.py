from collections import deque
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union, TYPE_CHECKING
import enum
import itertools
import logging

import attr
from sympy import Matrix as SympyMatrix

from .exception import InvalidType, NotAnAutomorphism

if TYPE_CHECKING:  # pragma: no cover
    from .chevalley import ChevalleyBasis

logger = logging.getLogger(__name__)

Root = Tuple[int, ...]
Weight = Tuple[int, ...]


@enum.unique
class DynkinSeries(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"


MINIMUM_RANK = {
    DynkinSeries.A: 1,
    DynkinSeries.B: 2,
    DynkinSeries.C: 2,
    DynkinSeries.D: 4,
}

EXCEPTIONAL_RANKS = {
    DynkinSeries.E: frozenset({6, 7, 8}),
    DynkinSeries.F: frozenset({4}),
    DynkinSeries.G: frozenset({2}),
}

EXCEPTIONAL_POSITIVE_ROOTS = {
    (DynkinSeries.E, 6): 36,
    (DynkinSeries.E, 7): 63,
    (DynkinSeries.E, 8): 120,
    (DynkinSeries.F, 4): 24,
    (DynkinSeries.G, 2): 6,
}


def expected_positive_roots(series: DynkinSeries, rank: int) -> int:
    if series is DynkinSeries.A:
        return rank * (rank + 1) // 2
    if series in (DynkinSeries.B, DynkinSeries.C):
        return rank * rank
    if series is DynkinSeries.D:
        return rank * (rank - 1)
    return EXCEPTIONAL_POSITIVE_ROOTS[(series, rank)]


def parse_type(name: str) -> Tuple[DynkinSeries, int]:
    """
    >>> parse_type('A3')
    (<DynkinSeries.A: 'A'>, 3)
    """
    name = name.strip()
    try:
        series = DynkinSeries(name[:1].upper())
        rank = int(name[1:])
    except ValueError:
        raise InvalidType(f'{name!r} is not a Dynkin type like A3 or E6')
    return series, rank


def _validate(series: DynkinSeries, rank: int) -> None:
    if series in MINIMUM_RANK:
        if rank < MINIMUM_RANK[series]:
            raise InvalidType(f'{series.value}{rank} is not a finite type (rank must be at least {MINIMUM_RANK[series]})')
        return

    if rank not in EXCEPTIONAL_RANKS[series]:
        raise InvalidType(f'{series.value}{rank} is not a finite type')


def cartan_matrix(series: DynkinSeries, rank: int) -> Tuple[Tuple[int, ...], ...]:
    """
    The Cartan matrix in Bourbaki numbering, with entry [i][j] = alpha_j(h_i).

    >>> cartan_matrix(DynkinSeries.B, 2)
    ((2, -1), (-2, 2))
    >>> cartan_matrix(DynkinSeries.G, 2)
    ((2, -3), (-1, 2))
    """
    _validate(series, rank)
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, ij: int = -1, ji: int = -1) -> None:
        a[i][j] = ij
        a[j][i] = ji

    if series in (DynkinSeries.A, DynkinSeries.B, DynkinSeries.C):
        for i in range(n - 1):
            link(i, i + 1)
        if series is DynkinSeries.B:
            link(n - 2, n - 1, -1, -2)
        elif series is DynkinSeries.C:
            link(n - 2, n - 1, -2, -1)

    elif series is DynkinSeries.D:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)

    elif series is DynkinSeries.E:
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)

    elif series is DynkinSeries.F:
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)

    elif series is DynkinSeries.G:
        link(0, 1, -3, -1)

    return tuple(tuple(row) for row in a)


def symmetrizer(cartan: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Half squared lengths of the simple roots, normalized so the short ones are 1."""
    n = len(cartan)
    d: List[Optional[Fraction]] = [None] * n
    d[0] = Fraction(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if j != i and cartan[i][j] and d[j] is None:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]  # type: ignore
                queue.append(j)

    assert all(x is not None for x in d), 'the Dynkin diagram is connected'
    least = min(x for x in d if x is not None)
    return tuple(int(x / least) for x in d if x is not None)


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class RootSystem:
    series: DynkinSeries
    rank: int
    cartan: Tuple[Tuple[int, ...], ...]
    symmetrizer: Tuple[int, ...]
    positive_roots: Tuple[Root, ...]
    inverse_cartan: Tuple[Tuple[Fraction, ...], ...] = attr.ib(eq=False, repr=False)
    root_index: Dict[Root, int] = attr.ib(eq=False, repr=False)

    @property
    def name(self) -> str:
        return f"{self.series.value}{self.rank}"

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    @property
    def dimension(self) -> int:
        return 2 * len(self.positive_roots) + self.rank

    def simple_root(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def index_of(self, root: Root) -> int:
        return self.root_index[tuple(root)]

    def is_positive_root(self, coords: Sequence[int]) -> bool:
        return tuple(coords) in self.root_index

    def height(self, coords: Sequence[int]) -> int:
        return sum(coords)

    def root_labels(self, coords: Sequence[int]) -> Weight:
        """The values alpha(h_i) of a root lattice element."""
        return tuple(sum(self.cartan[i][j] * coords[j] for j in range(self.rank)) for i in range(self.rank))

    def to_root_coords(self, mu: Sequence[int]) -> Tuple[Fraction, ...]:
        return tuple(sum((self.inverse_cartan[j][i] * mu[i] for i in range(self.rank)), Fraction(0)) for j in range(self.rank))

    def inner(self, mu: Sequence[Any], nu: Sequence[Any]) -> Fraction:
        """The invariant form on weights given by their labels; short roots have squared length 2."""
        x = self.to_root_coords(mu)
        return sum((x[j] * self.symmetrizer[j] * nu[j] for j in range(self.rank)), Fraction(0))

    def root_length(self, coords: Sequence[int]) -> int:
        """(alpha, alpha)/2 for a root given by simple-root coordinates."""
        labels = self.root_labels(coords)
        return int(sum(coords[j] * self.symmetrizer[j] * labels[j] for j in range(self.rank)) // 2)

    def is_long(self, coords: Sequence[int]) -> bool:
        return self.root_length(coords) == max(self.symmetrizer)

    def coroot_coords(self, coords: Sequence[int]) -> Tuple[int, ...]:
        """h_alpha as an integer combination of the h_i."""
        d_alpha = self.root_length(coords)
        out = []
        for i in range(self.rank):
            c = Fraction(coords[i] * self.symmetrizer[i], d_alpha)
            assert c.denominator == 1
            out.append(int(c))
        return tuple(out)

    def pairing(self, mu: Sequence[int], coords: Sequence[int]) -> int:
        """mu(h_alpha)."""
        return sum(c * m for c, m in zip(self.coroot_coords(coords), mu))

    def reflect(self, mu: Sequence[int], i: int) -> Weight:
        return tuple(mu[j] - mu[i] * self.cartan[j][i] for j in range(self.rank))

    def dominant(self, mu: Sequence[int]) -> Weight:
        current = tuple(mu)
        while True:
            negative = next((i for i, x in enumerate(current) if x < 0), None)
            if negative is None:
                return current
            current = self.reflect(current, negative)

    def antidominant(self, mu: Sequence[int]) -> Weight:
        return tuple(-x for x in self.dominant(tuple(-x for x in mu)))

    def is_dominant(self, mu: Sequence[int]) -> bool:
        return all(x >= 0 for x in mu)

    @property
    def rho(self) -> Weight:
        return tuple(1 for _ in range(self.rank))

    def fundamental_weight(self, i: int) -> Weight:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    @property
    def fundamental_weights(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Fundamental weights in simple-root coordinates."""
        return tuple(tuple(self.inverse_cartan[j][i] for j in range(self.rank)) for i in range(self.rank))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": self.name,
            "rank": self.rank,
            "cartan_matrix": [list(row) for row in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots],
            "highest_root": list(self.highest_root),
            "fundamental_weights": [[str(x) for x in w] for w in self.fundamental_weights],
        }


def _inverse(cartan: Sequence[Sequence[int]]) -> Tuple[Tuple[Fraction, ...], ...]:
    inv = SympyMatrix(cartan).inv()
    n = len(cartan)
    return tuple(tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(n)) for i in range(n))


def _positive_roots(cartan: Sequence[Sequence[int]]) -> List[Root]:
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots: Set[Root] = set(simple)
    layer = list(simple)

    while layer:
        following: Set[Root] = set()
        for beta in layer:
            labels = [sum(cartan[i][j] * beta[j] for j in range(n)) for i in range(n)]
            for i in range(n):
                if beta == simple[i]:
                    continue
                p = 0
                while True:
                    lower = tuple(b - (p + 1) * (1 if j == i else 0) for j, b in enumerate(beta))
                    if lower in roots:
                        p += 1
                    else:
                        break
                q = p - labels[i]
                if q > 0:
                    following.add(tuple(b + (1 if j == i else 0) for j, b in enumerate(beta)))
        following -= roots
        roots |= following
        layer = sorted(following)

    return sorted(roots, key=lambda r: (sum(r), tuple(-c for c in r)))


def build_root_system(series: Union[DynkinSeries, str], rank: int) -> RootSystem:
    if isinstance(series, str):
        try:
            series = DynkinSeries(series.upper())
        except ValueError:
            raise InvalidType(f'{series!r} is not a Dynkin series')

    cartan = cartan_matrix(series, rank)
    roots = _positive_roots(cartan)

    expected = expected_positive_roots(series, rank)
    assert len(roots) == expected, f'{series.value}{rank}: found {len(roots)} positive roots, expected {expected}'

    logger.debug('built %s%s with %s positive roots', series.value, rank, len(roots))

    return RootSystem(
        series=series,
        rank=rank,
        cartan=cartan,
        symmetrizer=symmetrizer(cartan),
        positive_roots=tuple(roots),
        inverse_cartan=_inverse(cartan),
        root_index={r: i for i, r in enumerate(roots)},
    )


def root_system(name: str) -> RootSystem:
    series, rank = parse_type(name)
    return build_root_system(series, rank)


def weyl_orbit(rs: RootSystem, mu: Sequence[int]) -> FrozenSet[Weight]:
    start = tuple(mu)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for i in range(rs.rank):
            image = rs.reflect(current, i)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return frozenset(seen)


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class DiagramAutomorphism:
    permutation: Tuple[int, ...]
    order: int

    @property
    def is_identity(self) -> bool:
        return self.order == 1

    def __call__(self, i: int) -> int:
        return self.permutation[i]

    def apply_root(self, coords: Sequence[int]) -> Root:
        out = [0] * len(coords)
        for i, c in enumerate(coords):
            out[self.permutation[i]] = c
        return tuple(out)

    def apply_weight(self, mu: Sequence[int]) -> Weight:
        return self.apply_root(mu)

    def to_dict(self) -> Dict[str, Any]:
        return {"permutation": list(self.permutation), "order": self.order}


def from_permutation(rs: RootSystem, permutation: Sequence[int]) -> DiagramAutomorphism:
    perm = tuple(permutation)
    n = rs.rank
    if sorted(perm) != list(range(n)):
        raise NotAnAutomorphism(f'{perm} is not a permutation of the {n} nodes of {rs.name}')

    for i in range(n):
        for j in range(n):
            if rs.cartan[perm[i]][perm[j]] != rs.cartan[i][j]:
                raise NotAnAutomorphism(f'{perm} does not preserve the Cartan matrix of {rs.name}')

    order = 1
    current = perm
    while current != tuple(range(n)):
        current = tuple(perm[x] for x in current)
        order += 1

    return DiagramAutomorphism(permutation=perm, order=order)


def automorphism(rs: RootSystem, spec: str) -> DiagramAutomorphism:
    n = rs.rank
    identity = list(range(n))

    if spec == 'id':
        return from_permutation(rs, identity)

    if spec == 'flip':
        if rs.series is DynkinSeries.A and n >= 2:
            return from_permutation(rs, [n - 1 - i for i in range(n)])
        if rs.series is DynkinSeries.D:
            perm = identity[:]
            perm[n - 2], perm[n - 1] = n - 1, n - 2
            return from_permutation(rs, perm)
        if rs.series is DynkinSeries.E and n == 6:
            return from_permutation(rs, [5, 1, 4, 3, 2, 0])
        raise NotAnAutomorphism(f'{rs.name} has no diagram flip')

    if spec == 'rot3':
        if rs.series is DynkinSeries.D and n == 4:
            return from_permutation(rs, [2, 1, 3, 0])
        raise NotAnAutomorphism(f'{rs.name} has no triality')

    raise NotAnAutomorphism(f'unknown automorphism {spec!r}; expected id, flip or rot3')


def folded_type(rs: RootSystem, sigma: DiagramAutomorphism) -> Tuple[DynkinSeries, int]:
    n = rs.rank
    if sigma.is_identity:
        return rs.series, n

    if rs.series is DynkinSeries.A:
        if n % 2 == 0:
            return (DynkinSeries.A, 1) if n == 2 else (DynkinSeries.B, n // 2)
        return DynkinSeries.C, (n + 1) // 2

    if rs.series is DynkinSeries.D:
        if sigma.order == 3:
            return DynkinSeries.G, 2
        return DynkinSeries.B, n - 1

    if rs.series is DynkinSeries.E:
        return DynkinSeries.F, 4

    raise NotAnAutomorphism(f'{rs.name} admits no folding by {sigma.permutation}')


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class FoldingDatum:
    base: RootSystem
    sigma: DiagramAutomorphism
    folded: RootSystem
    is_a2n: bool
    # I_0 in the Bourbaki order of the folded type: each entry an orbit of nodes of I
    node_orbits: Tuple[Tuple[int, ...], ...]
    o_map: Tuple[int, ...]
    root_orbits: Tuple[Tuple[int, ...], ...]
    gamma: Tuple[int, ...]
    representatives: Tuple[int, ...]
    restriction: Tuple[Root, ...]
    short: FrozenSet[Root]
    double_short: FrozenSet[Root]
    eps_weights: Tuple[Tuple[Root, ...], ...]
    representative_of: Dict[Root, int] = attr.ib(eq=False, repr=False)

    @property
    def m(self) -> int:
        return self.sigma.order

    @property
    def rank0(self) -> int:
        return len(self.node_orbits)

    def node_of(self, i: int) -> int:
        return next(idx for idx, orbit in enumerate(self.node_orbits) if i in orbit)

    def restrict_root(self, alpha: Union[int, Root]) -> Root:
        idx = alpha if isinstance(alpha, int) else self.base.index_of(alpha)
        return self.restriction[idx]

    def representative(self, mu: Sequence[int]) -> int:
        """The root of O restricting to mu."""
        key = tuple(mu)
        if key not in self.representative_of:
            raise ValueError(f'{key} is not the restriction of a positive root')
        return self.representative_of[key]

    def restricted_roots(self) -> Tuple[Root, ...]:
        """R_0^+ followed by 2R_s when present, in the order of the representatives."""
        return tuple(self.restriction[a] for a in self.representatives)

    def is_short(self, mu: Sequence[int]) -> bool:
        return tuple(mu) in self.short

    def is_double_short(self, mu: Sequence[int]) -> bool:
        return tuple(mu) in self.double_short

    def has_weight(self, mu: Sequence[int], eps: int) -> bool:
        return tuple(mu) in self.eps_weights[eps % self.m]

    def sigma_power(self, alpha: int, j: int) -> int:
        coords = self.base.positive_roots[alpha]
        for _ in range(j % self.m):
            coords = self.sigma.apply_root(coords)
        return self.base.index_of(coords)

    def table_row(self) -> Dict[str, Any]:
        return {
            "type": self.base.name,
            "m": self.m,
            "folded_type": self.folded.name,
            "wt_g1": eps_pattern(self),
        }

    def to_dict(self) -> Dict[str, Any]:
        roots = self.base.positive_roots
        return {
            **self.table_row(),
            "base": self.base.to_dict(),
            "sigma": self.sigma.to_dict(),
            "folded": self.folded.to_dict(),
            "I0": [list(orbit) for orbit in self.node_orbits],
            "o": list(self.o_map),
            "O": [list(roots[a]) for a in self.representatives],
            "gamma": {str(list(r)): g for r, g in zip(roots, self.gamma)},
            "restriction": {str(list(r)): list(self.restriction[i]) for i, r in enumerate(roots)},
            "short": sorted(list(r) for r in self.short),
            "eps_weights": [[list(w) for w in ws] for ws in self.eps_weights],
        }


def orbit_size(fd: FoldingDatum, alpha: Union[int, Root]) -> int:
    idx = alpha if isinstance(alpha, int) else fd.base.index_of(alpha)
    return fd.gamma[idx]


def _restricted_form(rs: RootSystem, sigma: DiagramAutomorphism, a: Root, b: Root) -> Fraction:
    total = Fraction(0)
    current = b
    for _ in range(sigma.order):
        total += rs.inner(rs.root_labels(a), rs.root_labels(current))
        current = sigma.apply_root(current)
    return total / sigma.order


def _match_orbits(rs: RootSystem, sigma: DiagramAutomorphism, orbits: List[Tuple[int, ...]], target: RootSystem) -> List[Tuple[int, ...]]:
    k = len(orbits)
    reps = [rs.simple_root(orbit[0]) for orbit in orbits]
    form = [[_restricted_form(rs, sigma, reps[i], reps[j]) for j in range(k)] for i in range(k)]
    folded = [[int(2 * form[i][j] / form[i][i]) for j in range(k)] for i in range(k)]

    for perm in itertools.permutations(range(k)):
        if all(folded[perm[i]][perm[j]] == target.cartan[i][j] for i in range(k) for j in range(k)):
            return [orbits[p] for p in perm]

    raise AssertionError(f'no labelling of the folded diagram of {rs.name} matches {target.name}')


def fold(rs: RootSystem, sigma: DiagramAutomorphism, structure: Optional['ChevalleyBasis'] = None) -> FoldingDatum:
    """
    All folding data of a diagram automorphism. `structure` is the
    automorphism-adapted Chevalley basis; it is only consulted for A_2n,
    where the representative of each orbit {a, sigma(a)} with a + sigma(a) a
    root is chosen so that [x_a, x_sigma(a)] = +x_{a + sigma(a)}.
    """
    m = sigma.order
    series, rank0 = folded_type(rs, sigma)
    target = build_root_system(series, rank0)
    is_a2n = rs.series is DynkinSeries.A and rs.rank % 2 == 0 and m == 2

    seen_nodes: Set[int] = set()
    orbits = []
    for i in range(rs.rank):
        if i in seen_nodes:
            continue
        orbit = [i]
        j = sigma(i)
        while j != i:
            orbit.append(j)
            j = sigma(j)
        seen_nodes.update(orbit)
        orbits.append(tuple(sorted(orbit)))

    node_orbits = _match_orbits(rs, sigma, orbits, target) if m > 1 else [(i,) for i in range(rs.rank)]
    node_position = {i: pos for pos, orbit in enumerate(node_orbits) for i in orbit}

    roots = rs.positive_roots
    root_orbits = []
    for coords in roots:
        orbit = [rs.index_of(coords)]
        image = sigma.apply_root(coords)
        while image != coords:
            orbit.append(rs.index_of(image))
            image = sigma.apply_root(image)
        root_orbits.append(tuple(orbit))
    gamma = tuple(len(o) for o in root_orbits)

    restriction = []
    for coords in roots:
        out = [0] * len(node_orbits)
        for i, c in enumerate(coords):
            out[node_position[i]] += c
        restriction.append(tuple(out))

    image_set = set(restriction)
    if m == 1:
        short: FrozenSet[Root] = frozenset()
    elif is_a2n:
        short = frozenset(mu for mu in image_set if tuple(2 * x for x in mu) in image_set)
    else:
        short = frozenset(mu for mu in image_set if not target.is_long(mu))
    double_short = frozenset(tuple(2 * x for x in mu) for mu in short) & image_set if is_a2n else frozenset()

    representatives = _choose_representatives(rs, sigma, root_orbits, is_a2n, structure)

    o_map = []
    rep_set = set(representatives)
    for orbit in node_orbits:
        chosen = [i for i in orbit if rs.index_of(rs.simple_root(i)) in rep_set]
        assert len(chosen) == 1, f'orbit {orbit} must have exactly one simple root in O'
        o_map.append(chosen[0])

    eps_weights = []
    for eps in range(m):
        weights: Set[Root] = set()
        for idx, coords in enumerate(roots):
            mu = restriction[idx]
            fixed = gamma[idx] == 1
            if is_a2n and fixed:
                present = eps == 1
            elif fixed and not is_a2n:
                present = eps == 0
            else:
                present = True
            if present:
                weights.add(mu)
                weights.add(tuple(-x for x in mu))
        eps_weights.append(tuple(sorted(weights)))

    fd = FoldingDatum(
        base=rs,
        sigma=sigma,
        folded=target,
        is_a2n=is_a2n,
        node_orbits=tuple(node_orbits),
        o_map=tuple(o_map),
        root_orbits=tuple(root_orbits),
        gamma=gamma,
        representatives=tuple(sorted(representatives)),
        restriction=tuple(restriction),
        short=short,
        double_short=double_short,
        eps_weights=tuple(eps_weights),
        representative_of={restriction[a]: a for a in representatives},
    )

    assert len(fd.representative_of) == len(representatives), 'restriction is injective on O'
    logger.debug('folded %s by %s into %s', rs.name, sigma.permutation, target.name)

    return fd


def _choose_representatives(
    rs: RootSystem,
    sigma: DiagramAutomorphism,
    root_orbits: Sequence[Tuple[int, ...]],
    is_a2n: bool,
    structure: Optional['ChevalleyBasis'],
) -> List[int]:
    m = sigma.order
    roots = rs.positive_roots

    if m == 1:
        return list(range(len(roots)))

    if m == 3:
        # fixed roots together with alpha_i, alpha_i + alpha_2 and the
        # remaining sum of three, for the first non-fixed node i
        first = next(i for i in range(rs.rank) if sigma(i) != i)
        others = [j for j in range(rs.rank) if sigma(j) != j and j != first]
        centre = next(i for i in range(rs.rank) if sigma(i) == i)
        chosen = [idx for idx, orbit in enumerate(root_orbits) if len(orbit) == 1]
        extra = [
            rs.simple_root(first),
            tuple(1 if j in (first, centre) else 0 for j in range(rs.rank)),
            tuple(1 if j in (centre, *others) else 0 for j in range(rs.rank)),
        ]
        chosen.extend(rs.index_of(r) for r in extra)
        return chosen

    if is_a2n and structure is None:
        from .chevalley import adapted_basis, structure_constants
        structure = adapted_basis(structure_constants(rs), sigma)

    chosen = []
    seen: Set[int] = set()
    for idx in range(len(roots)):
        if idx in seen:
            continue
        orbit = root_orbits[idx]
        seen.update(orbit)
        if len(orbit) == 1:
            chosen.append(idx)
            continue

        partner = orbit[1]
        total = tuple(a + b for a, b in zip(roots[idx], roots[partner]))
        if is_a2n and rs.is_positive_root(total):
            assert structure is not None
            sign = structure.structure_constant(idx, partner)
            chosen.append(idx if sign == 1 else partner)
        else:
            chosen.append(idx)

    return chosen


def folding(type_name: str, spec: str) -> FoldingDatum:
    rs = root_system(type_name)
    return fold(rs, automorphism(rs, spec))


def eps_pattern(fd: FoldingDatum) -> str:
    """Names the set wt(g_1) minus zero in terms of the folded roots."""
    if fd.m == 1:
        return "none"

    r0 = set(fd.folded.positive_roots)
    rs_short = {mu for mu in fd.short if mu in r0}
    def signed(roots: Iterable[Root]) -> Set[Root]:
        return {r for mu in roots for r in (mu, tuple(-x for x in mu))}

    g1 = set(fd.eps_weights[1])
    if g1 == signed(rs_short):
        return "±R_s"
    if g1 == signed(r0) | signed(fd.double_short):
        return "±R_0 ∪ ±2R_s"
    return "other"


def restrict_weight(fd: FoldingDatum, mu: Sequence[int]) -> Weight:
    """mu(h_{i,0}) for every node i of I_0."""
    return tuple(sum(mu[i] for i in orbit) for orbit in fd.node_orbits)


def extend_weight(fd: FoldingDatum, lam0: Sequence[int]) -> Weight:
    """The g-weight with lambda(h_o(i)) = lambda0(h_{i,0}) and zero on the other nodes."""
    out = [0] * fd.base.rank
    for pos, node in enumerate(fd.o_map):
        out[node] = lam0[pos]
    return tuple(out)


def in_P0_sigma_plus(fd: FoldingDatum, lam0: Sequence[int]) -> bool:
    return len(lam0) == fd.rank0 and all(isinstance(x, int) and x >= 0 for x in lam0)


def short_nodes(fd: FoldingDatum) -> Tuple[int, ...]:
    return tuple(pos for pos in range(fd.rank0) if fd.is_short(fd.folded.simple_root(pos)))


def to_fundamental_coords(fd: FoldingDatum, lam0: Sequence[int]) -> Weight:
    """
    Coordinates over the fundamental weights of the folded algebra. For A_2n
    the short coroot is twice h_{i,0}, which doubles that coordinate.
    """
    if not fd.is_a2n:
        return tuple(lam0)
    doubled = set(short_nodes(fd))
    return tuple(2 * x if pos in doubled else x for pos, x in enumerate(lam0))


def orbit_coroot(fd: FoldingDatum, alpha: int) -> Tuple[int, ...]:
    """The sum of h_beta over the orbit of alpha, as a combination of the h_i."""
    total = [0] * fd.base.rank
    for beta in fd.root_orbits[alpha]:
        for i, c in enumerate(fd.base.coroot_coords(fd.base.positive_roots[beta])):
            total[i] += c
    return tuple(total)


def h_mu_pairing(fd: FoldingDatum, nu: Sequence[int], mu: Sequence[int]) -> int:
    """nu(h_{mu,0}) for a g-weight nu and a restricted root mu."""
    alpha = fd.representative(mu)
    return sum(c * x for c, x in zip(orbit_coroot(fd, alpha), nu))
