from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple
import logging
import math

import attr
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form as _column_hnf

logger = logging.getLogger(__name__)

# entries are Fractions or coeffring.Scalars; both support +, -, *, 1/x and truthiness
Entry = Any
Vector = Dict[int, Entry]
# column index -> {row index: entry}
Matrix = Dict[int, Vector]
LinearMap = Callable[[Vector], Vector]


def add_into(target: Vector, v: Vector, c: Entry = None) -> None:
    for idx, val in v.items():
        term = val if c is None else c * val
        total = target[idx] + term if idx in target else term
        if total:
            target[idx] = total
        else:
            target.pop(idx, None)


def scale(v: Vector, c: Entry) -> Vector:
    out = {}
    for idx, val in v.items():
        prod = c * val
        if prod:
            out[idx] = prod
    return out


def combine(terms: Iterable[Tuple[Entry, Vector]]) -> Vector:
    out: Vector = {}
    for c, v in terms:
        add_into(out, v, c)
    return out


def apply_matrix(matrix: Matrix, v: Vector) -> Vector:
    out: Vector = {}
    for col, val in v.items():
        column = matrix.get(col)
        if column:
            add_into(out, column, val)
    return out


def compose(outer: Matrix, inner: Matrix) -> Matrix:
    out: Matrix = {}
    for col, column in inner.items():
        image = apply_matrix(outer, column)
        if image:
            out[col] = image
    return out


def matrix_sum(terms: Iterable[Tuple[Entry, Matrix]]) -> Matrix:
    out: Matrix = {}
    for c, matrix in terms:
        for col, column in matrix.items():
            target = out.setdefault(col, {})
            add_into(target, column, c)
            if not target:
                del out[col]
    return out


def commutator(a: Matrix, b: Matrix, c: Entry = 1) -> Matrix:
    """c(ab - ba)."""
    return matrix_sum([(c, compose(a, b)), (-c, compose(b, a))])


@attr.s(slots=True, kw_only=True, auto_attribs=True)
class EchelonBasis:
    """
    An incrementally built row-echelon basis of a subspace.

    Every stored row is keyed by its pivot, the smallest index it touches, and
    has a one there. With `track` set, each row also remembers which
    combination of the inserted vectors produced it.
    """
    track: bool = False
    rows: Dict[int, Vector] = attr.ib(factory=dict)
    combos: Dict[int, Vector] = attr.ib(factory=dict)
    inserted: int = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vector) -> Tuple[Vector, Vector]:
        """Returns the residual of v and, when tracking, the combination of inserted vectors removed from it."""
        residual = dict(v)
        removed: Vector = {}

        while True:
            present = [idx for idx in residual if idx in self.rows]
            if not present:
                break
            pivot = min(present)
            c = residual[pivot]
            add_into(residual, self.rows[pivot], -c)
            if self.track:
                add_into(removed, self.combos[pivot], c)

        return residual, removed

    def insert(self, v: Vector) -> bool:
        """Adds v to the spanning set; returns whether it enlarged the span."""
        label = self.inserted
        self.inserted += 1

        residual, removed = self.reduce(v)
        if not residual:
            return False

        pivot = min(residual)
        inv = 1 / residual[pivot]
        self.rows[pivot] = scale(residual, inv)

        if self.track:
            combo: Vector = {label: 1}
            add_into(combo, removed, -1)
            self.combos[pivot] = scale(combo, inv)

        return True

    def contains(self, v: Vector) -> bool:
        residual, _ = self.reduce(v)
        return not residual

    def express(self, v: Vector) -> Optional[Vector]:
        """The coefficients of v over the inserted vectors, or None if v is outside the span."""
        assert self.track, 'express needs an EchelonBasis built with track=True'
        residual, removed = self.reduce(v)
        if residual:
            return None
        return removed

    def basis(self) -> List[Vector]:
        return [self.rows[p] for p in sorted(self.rows)]


def rref(rows: Iterable[Vector]) -> Dict[int, Vector]:
    """Fully reduced row echelon form, keyed by pivot."""
    eb = EchelonBasis()
    for row in rows:
        eb.insert(row)

    reduced: Dict[int, Vector] = {}
    for pivot in sorted(eb.rows, reverse=True):
        row = dict(eb.rows[pivot])
        for other in list(row):
            if other != pivot and other in reduced:
                add_into(row, reduced[other], -row[other])
        reduced[pivot] = row

    return {p: reduced[p] for p in sorted(reduced)}


def nullspace(rows: Iterable[Vector], columns: Sequence[int], one: Entry) -> List[Vector]:
    """A basis of {x : row . x = 0 for every row}, indexed by the free columns in order."""
    reduced = rref(rows)
    basis = []
    for free in columns:
        if free in reduced:
            continue
        v: Vector = {free: one}
        for pivot, row in reduced.items():
            val = row.get(free)
            if val:
                v[pivot] = -val
        basis.append(v)
    return basis


def closure(start: Iterable[Vector], maps: Sequence[LinearMap], *, limit: Optional[int] = None) -> EchelonBasis:
    """The smallest subspace containing `start` and stable under every map."""
    span = EchelonBasis()
    frontier = [v for v in start if v]

    while frontier:
        w = frontier.pop()
        if not span.insert(w):
            continue
        if limit is not None and span.rank >= limit:
            break
        for f in maps:
            image = f(w)
            if image:
                frontier.append(image)

    return span


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class IntLattice:
    dimension: int
    generators: Tuple[Tuple[int, ...], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.generators)

    def to_dict(self) -> Dict[str, Any]:
        return {"dimension": self.dimension, "generators": [list(g) for g in self.generators]}

    def coordinates(self, v: Sequence[Any]) -> Optional[List[Fraction]]:
        """
        Rational coordinates of v over the generators, assuming they are in
        Hermite normal form; None when v is outside their rational span.
        """
        residual = [Fraction(x) for x in v]
        coords = []
        for row in self.generators:
            pivot = _pivot(row)
            assert pivot is not None
            c = residual[pivot] / row[pivot]
            coords.append(c)
            if c:
                residual = [r - c * x for r, x in zip(residual, row)]
        if any(residual):
            return None
        return coords

    def contains(self, v: Sequence[int]) -> bool:
        coords = self.coordinates(v)
        return coords is not None and all(c.denominator == 1 for c in coords)


def _pivot(row: Sequence[int]) -> Optional[int]:
    return next((i for i, x in enumerate(row) if x), None)


def hermite_normal_form(lattice: IntLattice) -> IntLattice:
    """
    The row-style Hermite normal form: rows sorted by pivot (first nonzero
    coordinate), pivots positive, and entries above each pivot reduced into
    [0, pivot).

    >>> hermite_normal_form(IntLattice(dimension=2, generators=((2, 0), (0, 2), (1, 1)))).generators
    ((1, 1), (0, 2))
    >>> hermite_normal_form(IntLattice(dimension=3)).rank
    0
    """
    n = lattice.dimension
    gens = [g for g in lattice.generators if any(g)]
    if not gens:
        return IntLattice(dimension=n)

    for g in gens:
        if len(g) != n:
            raise ValueError(f'generator {g} does not have {n} coordinates')

    # generators as columns, coordinates reversed: the column-style form then
    # puts each pivot at the first nonzero coordinate of the original order
    columns = [[ZZ(int(gens[j][n - 1 - i])) for j in range(len(gens))] for i in range(n)]
    hnf = _column_hnf(DomainMatrix(columns, (n, len(gens)), ZZ)).to_Matrix()

    rows = []
    for j in range(hnf.cols):
        row = tuple(int(hnf[n - 1 - i, j]) for i in range(n))
        if any(row):
            rows.append(row)

    rows.sort(key=lambda r: _pivot(r) or 0)
    return IntLattice(dimension=n, generators=tuple(rows))


def integral_scale(vectors: Sequence[Sequence[Fraction]]) -> int:
    """The least common denominator of every coordinate."""
    denom = 1
    for v in vectors:
        for x in v:
            d = Fraction(x).denominator
            denom = denom * d // math.gcd(denom, d)
    return denom
