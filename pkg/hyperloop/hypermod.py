from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union
import itertools
import logging

import attr

from .character import Character
from .chevalley import ChevalleyBasis, root_operators, structure_constants
from .coeffring import RingSpec, Scalar, from_int, one
from .exception import CharTwoA2n, DegreeOutOfRange, LatticeDenominator
from .highest_weight import build_highest_weight_module
from .linalg import (
    EchelonBasis, IntLattice, Matrix, Vector,
    add_into, apply_matrix, closure, hermite_normal_form, integral_scale, matrix_sum, nullspace, rref,
)
from .ncr import ncr
from .rootfold import FoldingDatum, RootSystem, Weight, to_fundamental_coords

logger = logging.getLogger(__name__)

# (positive root index, +1 or -1)
OperatorKey = Tuple[int, int]
Algebra = Union[RootSystem, ChevalleyBasis, FoldingDatum]


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True, eq=False)
class Module:
    """
    A finite-dimensional module for the hyperalgebra over `field`, with a
    weight basis and the matrices of every divided power (x+-_alpha)^(k),
    1 <= k <= k_max.
    """
    rs: RootSystem
    field: RingSpec
    highest_weight: Weight
    weights: Tuple[Weight, ...]
    weight_spaces: Dict[Weight, Tuple[int, ...]]
    # powers[(alpha, sign)][k - 1] is the matrix of (x^sign_alpha)^(k)
    powers: Dict[OperatorKey, Tuple[Matrix, ...]]
    k_max: int
    hv: int = 0
    # the contravariant form, one block per weight space
    gram: Optional[Dict[Weight, Dict[Tuple[int, int], Scalar]]] = None
    label: str = ''

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def operator(self, alpha: int, sign: int, k: int) -> Matrix:
        if k < 0 or k > self.k_max:
            raise DegreeOutOfRange(f'divided power {k} is outside 0..{self.k_max} for {self.label}')
        if k == 0:
            return {i: {i: one(self.field)} for i in range(self.dimension)}
        return self.powers[(alpha, sign)][k - 1]

    def basis_vector(self, i: int) -> Vector:
        return {i: one(self.field)}

    def to_dict(self) -> Dict[str, Any]:
        operators = []
        for (alpha, sign), matrices in sorted(self.powers.items()):
            for k, matrix in enumerate(matrices, start=1):
                entries = sorted(
                    [row, col, val.canonical()]
                    for col, column in matrix.items()
                    for row, val in column.items()
                )
                if entries:
                    operators.append({
                        "root": list(self.rs.positive_roots[alpha]),
                        "sign": sign,
                        "k": k,
                        "entries": entries,
                    })

        return {
            "type": self.rs.name,
            "field": self.field.canonical(),
            "highest_weight": list(self.highest_weight),
            "dimension": self.dimension,
            "weights": [list(w) for w in self.weights],
            "operators": operators,
        }


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True, eq=False)
class Radical:
    module: Module
    vectors: Tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return len(self.vectors)


def _resolve(algebra: Algebra, highest_weight: Sequence[int], field: RingSpec) -> Tuple[ChevalleyBasis, Weight]:
    lam = tuple(int(x) for x in highest_weight)

    if isinstance(algebra, FoldingDatum):
        if algebra.is_a2n and field.characteristic == 2:
            logger.warning('refusing the g_0-module of %s in characteristic 2', algebra.base.name)
            raise CharTwoA2n(f'the fixed-point algebra of {algebra.base.name} needs a characteristic other than 2')
        return structure_constants(algebra.folded), to_fundamental_coords(algebra, lam)

    if isinstance(algebra, ChevalleyBasis):
        return algebra, lam

    return structure_constants(algebra), lam


def _weight_spaces(weights: Sequence[Weight]) -> Dict[Weight, Tuple[int, ...]]:
    spaces: Dict[Weight, List[int]] = {}
    for idx, mu in enumerate(weights):
        spaces.setdefault(mu, []).append(idx)
    return {mu: tuple(indices) for mu, indices in spaces.items()}


def max_divided_power(rs: RootSystem, lam: Sequence[int]) -> int:
    return max((rs.pairing(lam, root) for root in rs.positive_roots), default=0) + 1


def build_weyl_module(algebra: Algebra, highest_weight: Sequence[int], field: RingSpec) -> Module:
    """
    W_F(lambda): the lattice U_Z(n-) v inside the characteristic-zero module
    V(lambda), read over `field`.

    Each weight space of the lattice is spanned by the divided powers
    (x-_alpha)^(k) of the lattice at mu + k alpha and put into Hermite normal
    form; the action is then written in lattice coordinates and reduced.
    """
    cb, lam = _resolve(algebra, highest_weight, field)
    rs = cb.rs
    if len(lam) != rs.rank or not rs.is_dominant(lam):
        raise ValueError(f'{list(lam)} is not a dominant weight of {rs.name}')

    hw = build_highest_weight_module(rs, lam)
    ups, downs = root_operators(rs, cb.recipes, hw.raising, hw.lowering)
    ups = [matrix_sum([(s, m)]) for s, m in zip(cb.signs, ups)]
    downs = [matrix_sum([(s, m)]) for s, m in zip(cb.signs, downs)]
    labels = [rs.root_labels(root) for root in rs.positive_roots]
    k_max = max_divided_power(rs, lam)

    order = sorted(hw.weight_spaces, key=lambda mu: (hw.depth[hw.weight_spaces[mu][0]], tuple(-x for x in mu)))
    scales: Dict[Weight, int] = {}
    lattices: Dict[Weight, IntLattice] = {}
    basis: List[Vector] = []
    weights: List[Weight] = []

    for mu in order:
        positions = hw.weight_spaces[mu]
        if mu == lam:
            gens: List[List[Fraction]] = [[Fraction(1)]]
        else:
            gens = []
            for a, label in enumerate(labels):
                for k in itertools.count(1):
                    upper = tuple(x + k * y for x, y in zip(mu, label))
                    if upper not in lattices:
                        break
                    for vector in _lattice_basis(hw.weight_spaces[upper], scales[upper], lattices[upper]):
                        image = _divided_power(downs[a], vector, k)
                        gens.append([image.get(pos, Fraction(0)) for pos in positions])

        scale = integral_scale(gens)
        lattice = hermite_normal_form(IntLattice(
            dimension=len(positions),
            generators=tuple(tuple(int(x * scale) for x in g) for g in gens),
        ))
        assert lattice.rank == len(positions), f'lattice of rank {lattice.rank} in a weight space of dimension {len(positions)}'

        scales[mu] = scale
        lattices[mu] = lattice
        for vector in _lattice_basis(positions, scale, lattice):
            basis.append(vector)
            weights.append(mu)

    spaces = _weight_spaces(weights)

    def coordinates(v: Vector, target: Weight) -> Vector:
        positions = hw.weight_spaces[target]
        dense = [v.get(pos, Fraction(0)) * scales[target] for pos in positions]
        coords = lattices[target].coordinates(dense)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise LatticeDenominator(f'a divided power leaves the lattice at weight {list(target)}')
        out: Vector = {}
        for idx, c in zip(spaces[target], coords):
            value = from_int(field, int(c))
            if value:
                out[idx] = value
        return out

    powers: Dict[OperatorKey, Tuple[Matrix, ...]] = {}
    for a, label in enumerate(labels):
        for sign, matrix in ((1, ups[a]), (-1, downs[a])):
            tables: List[Matrix] = [{} for _ in range(k_max)]
            for col, vector in enumerate(basis):
                current = vector
                for k in range(1, k_max + 1):
                    current = {i: c / k for i, c in apply_matrix(matrix, current).items()}
                    if not current:
                        break
                    target = tuple(x + sign * k * y for x, y in zip(weights[col], label))
                    image = coordinates(current, target)
                    if image:
                        tables[k - 1][col] = image
            powers[(a, sign)] = tuple(tables)

    gram: Dict[Weight, Dict[Tuple[int, int], Scalar]] = {}
    for mu, indices in spaces.items():
        block = hw.gram[mu]
        gram[mu] = {}
        for i, j in itertools.product(indices, repeat=2):
            total = Fraction(0)
            for r, x in basis[i].items():
                for s, y in basis[j].items():
                    total += x * y * block.get((r, s), Fraction(0))
            assert total.denominator == 1, 'the contravariant form is integral on the lattice'
            value = from_int(field, int(total))
            if value:
                gram[mu][(i, j)] = value

    logger.debug('W(%s) for %s over %s: dimension %s', list(lam), rs.name, field.canonical(), len(basis))

    return Module(
        rs=rs,
        field=field,
        highest_weight=lam,
        weights=tuple(weights),
        weight_spaces=spaces,
        powers=powers,
        k_max=k_max,
        hv=0,
        gram=gram,
        label=f'W({",".join(str(x) for x in lam)})',
    )


def _lattice_basis(positions: Sequence[int], scale: int, lattice: IntLattice) -> List[Vector]:
    out = []
    for g in lattice.generators:
        out.append({pos: Fraction(x, scale) for pos, x in zip(positions, g) if x})
    return out


def _divided_power(matrix: Matrix, v: Vector, k: int) -> Vector:
    current = v
    for j in range(1, k + 1):
        current = {i: c / j for i, c in apply_matrix(matrix, current).items()}
    return current


def apply_divided_power(module: Module, alpha: int, sign: int, k: int, v: Vector) -> Vector:
    """(x^sign_alpha)^(k) v; k = 0 is the identity."""
    if k < 0 or k > module.k_max:
        raise DegreeOutOfRange(f'divided power {k} is outside 0..{module.k_max} for {module.label}')
    if k == 0:
        return dict(v)
    return apply_matrix(module.powers[(alpha, sign)][k - 1], v)


def apply_hbinom(module: Module, i: int, k: int, v: Vector) -> Vector:
    """binom(h_i; k) acts on V_mu by binom(mu(h_i); k)."""
    out: Vector = {}
    for idx, c in v.items():
        value = c * ncr(module.weights[idx][i], k)
        if value:
            out[idx] = value
    return out


def contravariant_radical(module: Module) -> Radical:
    if module.gram is None:
        raise ValueError(f'{module.label} carries no contravariant form')

    unit = one(module.field)
    vectors: List[Vector] = []
    for mu, indices in module.weight_spaces.items():
        block = module.gram[mu]
        rows = [{j: block[(i, j)] for j in indices if (i, j) in block} for i in indices]
        vectors.extend(nullspace(rows, indices, unit))

    logger.debug('radical of %s over %s: dimension %s', module.label, module.field.canonical(), len(vectors))
    return Radical(module=module, vectors=tuple(vectors))


def simple_quotient(module: Module) -> Module:
    """V_F(lambda) = W_F(lambda) modulo the radical of the contravariant form."""
    radical = contravariant_radical(module)
    if not radical.vectors:
        return module

    reduced = rref(radical.vectors)
    keep = [i for i in range(module.dimension) if i not in reduced]
    new_index = {old: new for new, old in enumerate(keep)}

    def project(v: Vector) -> Vector:
        w = dict(v)
        for pivot, row in reduced.items():
            c = w.get(pivot)
            if c:
                add_into(w, row, -c)
        return {new_index[i]: c for i, c in w.items()}

    powers: Dict[OperatorKey, Tuple[Matrix, ...]] = {}
    for key, matrices in module.powers.items():
        tables = []
        for matrix in matrices:
            table: Matrix = {}
            for old in keep:
                column = matrix.get(old)
                if column:
                    image = project(column)
                    if image:
                        table[new_index[old]] = image
            tables.append(table)
        powers[key] = tuple(tables)

    weights = tuple(module.weights[i] for i in keep)
    assert module.gram is not None
    gram = {
        mu: {(new_index[i], new_index[j]): c for (i, j), c in block.items() if i in new_index and j in new_index}
        for mu, block in module.gram.items()
    }

    return Module(
        rs=module.rs,
        field=module.field,
        highest_weight=module.highest_weight,
        weights=weights,
        weight_spaces=_weight_spaces(weights),
        powers=powers,
        k_max=module.k_max,
        hv=new_index[module.hv],
        gram=gram,
        label=module.label.replace('W(', 'V(', 1),
    )


def build_simple_module(algebra: Algebra, highest_weight: Sequence[int], field: RingSpec) -> Module:
    return simple_quotient(build_weyl_module(algebra, highest_weight, field))


def character(module: Module) -> Character:
    return Character(multiplicities={mu: len(indices) for mu, indices in module.weight_spaces.items()})


def tensor(first: Module, second: Module) -> Module:
    """The tensor product, with divided powers acting through their coproduct."""
    if first.rs != second.rs or first.field != second.field:
        raise ValueError(f'cannot tensor {first.label} over {first.field.canonical()} with {second.label} over {second.field.canonical()}')

    width = second.dimension
    weights = tuple(
        tuple(x + y for x, y in zip(first.weights[i], second.weights[j]))
        for i in range(first.dimension)
        for j in range(width)
    )
    k_max = first.k_max + second.k_max - 1

    powers: Dict[OperatorKey, Tuple[Matrix, ...]] = {}
    for key in first.powers:
        alpha, sign = key
        tables = []
        for k in range(1, k_max + 1):
            table: Matrix = {}
            for i, j in itertools.product(range(first.dimension), range(width)):
                image: Vector = {}
                for left in range(max(0, k - second.k_max), min(k, first.k_max) + 1):
                    u = apply_divided_power(first, alpha, sign, left, {i: one(first.field)})
                    if not u:
                        continue
                    w = apply_divided_power(second, alpha, sign, k - left, {j: one(second.field)})
                    for a, x in u.items():
                        add_into(image, {a * width + b: y for b, y in w.items()}, x)
                if image:
                    table[i * width + j] = image
            tables.append(table)
        powers[key] = tuple(tables)

    return Module(
        rs=first.rs,
        field=first.field,
        highest_weight=tuple(x + y for x, y in zip(first.highest_weight, second.highest_weight)),
        weights=weights,
        weight_spaces=_weight_spaces(weights),
        powers=powers,
        k_max=k_max,
        hv=first.hv * width + second.hv,
        label=f'{first.label}⊗{second.label}',
    )


def generators(module: Module, signs: Iterable[int] = (1, -1)) -> List[Matrix]:
    chosen = set(signs)
    return [matrix for (alpha, sign), matrices in sorted(module.powers.items()) if sign in chosen for matrix in matrices]


def cyclic_closure(module: Module, v: Vector, operators: Optional[Sequence[Matrix]] = None) -> EchelonBasis:
    """The smallest subspace containing v and stable under the operators, every divided power by default."""
    chosen = generators(module) if operators is None else list(operators)
    maps = [lambda w, m=m: apply_matrix(m, w) for m in chosen]
    return closure([v], maps, limit=module.dimension)


def singular_vectors(module: Module) -> List[Vector]:
    """Vectors killed by every raising divided power, weight space by weight space."""
    unit = one(module.field)
    raising = generators(module, signs=(1,))
    out: List[Vector] = []
    for mu, indices in module.weight_spaces.items():
        rows: Dict[int, Vector] = {}
        for number, matrix in enumerate(raising):
            for j in indices:
                for t, c in matrix.get(j, {}).items():
                    rows.setdefault(number * module.dimension + t, {})[j] = c
        out.extend(nullspace(rows.values(), indices, unit))
    return out


def is_simple(module: Module) -> bool:
    """The highest weight vector generates, and it is the only singular vector up to scalars."""
    if cyclic_closure(module, module.basis_vector(module.hv)).rank != module.dimension:
        return False
    return len(singular_vectors(module)) == 1


def lowest_weight_check(module: Module) -> bool:
    """The w_0 lambda weight space is a line generating the module under the raising divided powers."""
    lowest = module.rs.antidominant(module.highest_weight)
    indices = module.weight_spaces.get(lowest, ())
    if len(indices) != 1:
        return False
    span = cyclic_closure(module, module.basis_vector(indices[0]), generators(module, signs=(1,)))
    return span.rank == module.dimension


def vectors_equal(v: Vector, w: Vector) -> bool:
    diff = dict(v)
    add_into(diff, w, -1)
    return not diff


def base_change(module: Module, target: RingSpec, embed: Callable[[Scalar], Scalar]) -> Module:
    """The same module read over a larger field through `embed`."""
    if module.field == target:
        return module

    def image(matrix: Matrix) -> Matrix:
        return {col: {row: embed(c) for row, c in column.items()} for col, column in matrix.items()}

    gram = None
    if module.gram is not None:
        gram = {mu: {key: embed(c) for key, c in block.items()} for mu, block in module.gram.items()}

    return attr.evolve(
        module,
        field=target,
        powers={key: tuple(image(matrix) for matrix in matrices) for key, matrices in module.powers.items()},
        gram=gram,
    )
