from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union
import enum
import itertools
import logging

import attr
from sympy import Poly, isprime, symbols

from .exception import CharEqualsOrder, DenominatorNotInvertible, NoPrimitiveRoot, RingLacksRoots

logger = logging.getLogger(__name__)

Coord = Union[Fraction, int]


@enum.unique
class RingKind(enum.Enum):
    Char0 = "char0"
    Finite = "finite"


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class RingSpec:
    kind: RingKind
    m: int = 1
    with_sqrt2: bool = False
    p: int = 0
    k: int = 1
    # ascending coefficients of a monic irreducible polynomial of degree k
    modulus: Tuple[int, ...] = ()

    @property
    def is_finite(self) -> bool:
        return self.kind is RingKind.Finite

    @property
    def zeta_dimension(self) -> int:
        return 2 if (self.kind is RingKind.Char0 and self.m == 3) else 1

    @property
    def dimension(self) -> int:
        if self.kind is RingKind.Finite:
            return self.k
        return self.zeta_dimension * (2 if self.with_sqrt2 else 1)

    @property
    def characteristic(self) -> int:
        return self.p if self.kind is RingKind.Finite else 0

    @property
    def size(self) -> Optional[int]:
        if self.kind is RingKind.Finite:
            return self.p ** self.k
        return None

    def canonical(self) -> str:
        if self.kind is RingKind.Finite:
            return f"F{self.p}" if self.k == 1 else f"F{self.p}^{self.k}"

        gens = []
        if self.m == 3:
            gens.append("z3")
        if self.with_sqrt2:
            gens.append("s2")

        return f"Q({','.join(gens)})" if gens else "Q"

    def to_dict(self) -> Dict[str, Any]:
        if self.kind is RingKind.Finite:
            return {"kind": self.kind.value, "p": self.p, "k": self.k, "modulus": list(self.modulus), "name": self.canonical()}
        return {"kind": self.kind.value, "m": self.m, "with_sqrt2": self.with_sqrt2, "name": self.canonical()}


def char0(m: int = 1, with_sqrt2: bool = False) -> RingSpec:
    if m not in (1, 2, 3):
        raise ValueError(f'the characteristic-zero ring supports m in (1, 2, 3), not {m}')
    # zeta_1 = 1 and zeta_2 = -1 are rational
    return RingSpec(kind=RingKind.Char0, m=m, with_sqrt2=with_sqrt2)


def rationals() -> RingSpec:
    return char0(1)


def finite_field(p: int, k: int = 1) -> RingSpec:
    if not isprime(p):
        raise ValueError(f'{p} is not a prime')
    if k < 1:
        raise ValueError(f'extension degree must be positive, not {k}')

    return RingSpec(kind=RingKind.Finite, p=p, k=k, modulus=least_irreducible(p, k))


_u = symbols('u')


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """
    The lexicographically least monic irreducible polynomial of degree k over
    F_p, as ascending coefficients.

    >>> least_irreducible(7, 1)
    (0, 1)
    >>> least_irreducible(5, 2)
    (1, 1, 1)
    """
    if k == 1:
        return (0, 1)

    for lower in itertools.product(range(p), repeat=k):
        if lower[0] == 0:
            continue
        coeffs = tuple(lower) + (1,)
        if Poly(list(reversed(coeffs)), _u, modulus=p).is_irreducible:
            logger.debug('modulus for F_%s^%s is %s', p, k, coeffs)
            return coeffs

    raise AssertionError(f'no irreducible polynomial of degree {k} over F_{p}')


@lru_cache(maxsize=None)
def _mult_table(ring: RingSpec) -> Tuple[Tuple[Tuple[Tuple[int, int], ...], ...], ...]:
    dim = ring.dimension

    if ring.kind is RingKind.Finite:
        k = ring.k
        powers: List[List[int]] = []
        for n in range(2 * k - 1):
            if n < k:
                powers.append([1 if i == n else 0 for i in range(k)])
                continue
            prev = powers[-1]
            top = prev[-1]
            shifted = [0] + prev[:-1]
            powers.append([(shifted[i] - top * ring.modulus[i]) % ring.p for i in range(k)])

        return tuple(
            tuple(
                tuple((idx, c) for idx, c in enumerate(powers[i + j]) if c)
                for j in range(dim)
            )
            for i in range(dim)
        )

    zdim = ring.zeta_dimension

    def basis_product(i: int, j: int) -> Tuple[Tuple[int, int], ...]:
        a1, b1 = i % zdim, i // zdim
        a2, b2 = j % zdim, j // zdim

        zeta_part = {a1 + a2: 1} if a1 + a2 < 2 else {0: -1, 1: -1}
        b = b1 + b2
        root_factor, b = (2, 0) if b == 2 else (1, b)

        return tuple(sorted((b * zdim + a, c * root_factor) for a, c in zeta_part.items()))

    return tuple(tuple(basis_product(i, j) for j in range(dim)) for i in range(dim))


def _norm(ring: RingSpec, c: Any) -> Coord:
    if ring.kind is RingKind.Finite:
        return int(c) % ring.p
    return Fraction(c)


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class Scalar:
    ring: RingSpec
    coords: Tuple[Coord, ...]

    def _coerce(self, other: Any) -> 'Scalar':
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise TypeError(f'cannot combine elements of {self.ring.canonical()} and {other.ring.canonical()}')
            return other
        if isinstance(other, int):
            return from_int(self.ring, other)
        if isinstance(other, Fraction):
            return from_fraction(self.ring, other)
        raise TypeError(f'cannot coerce {type(other)} into {self.ring.canonical()}')

    def __bool__(self) -> bool:
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and not any(self.coords[1:])

    def __add__(self, other: Any) -> 'Scalar':
        o = self._coerce(other)
        return Scalar(ring=self.ring, coords=tuple(_norm(self.ring, a + b) for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> 'Scalar':
        return Scalar(ring=self.ring, coords=tuple(_norm(self.ring, -a) for a in self.coords))

    def __sub__(self, other: Any) -> 'Scalar':
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> 'Scalar':
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> 'Scalar':
        o = self._coerce(other)
        ring = self.ring

        if ring.dimension == 1:
            return Scalar(ring=ring, coords=(_norm(ring, self.coords[0] * o.coords[0]),))

        table = _mult_table(ring)
        out: List[Any] = [0] * ring.dimension
        for i, a in enumerate(self.coords):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(o.coords):
                if not b:
                    continue
                ab = a * b
                for idx, c in row[j]:
                    out[idx] += c * ab

        return Scalar(ring=ring, coords=tuple(_norm(ring, c) for c in out))

    __rmul__ = __mul__

    def inverse(self) -> 'Scalar':
        if self.is_zero():
            raise ZeroDivisionError(f'zero has no inverse in {self.ring.canonical()}')

        ring = self.ring
        if ring.kind is RingKind.Finite:
            if ring.k == 1:
                return Scalar(ring=ring, coords=(pow(int(self.coords[0]), ring.p - 2, ring.p),))
            q = ring.p ** ring.k
            return self ** (q - 2)

        if ring.dimension == 1:
            return Scalar(ring=ring, coords=(1 / Fraction(self.coords[0]),))

        return _solve_char0(self, one(ring))

    def __truediv__(self, other: Any) -> 'Scalar':
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> 'Scalar':
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> 'Scalar':
        if n < 0:
            return self.inverse() ** (-n)

        result = one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1

        return result

    def sort_key(self) -> Tuple[Coord, ...]:
        return self.coords

    def to_fraction(self) -> Fraction:
        """The rational value of an element lying in the prime field of a characteristic-zero ring."""
        if self.ring.kind is RingKind.Finite or any(self.coords[1:]):
            raise ValueError(f'{self.canonical()} is not rational')
        return Fraction(self.coords[0])

    def canonical(self) -> str:
        ring = self.ring
        if ring.kind is RingKind.Finite:
            if ring.k == 1:
                return str(self.coords[0])
            return "(" + ", ".join(str(c) for c in self.coords) + ")"

        names = ["", "z", "s", "z*s"] if ring.zeta_dimension == 2 else ["", "s"]
        terms = []
        for c, name in zip(self.coords, names):
            if not c:
                continue
            if not name:
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            elif c == -1:
                terms.append(f"-{name}")
            elif Fraction(c).denominator != 1:
                terms.append(f"({c})*{name}")
            else:
                terms.append(f"{c}*{name}")

        if not terms:
            return "0"

        return " + ".join(terms).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.canonical()


def _solve_char0(a: Scalar, b: Scalar) -> Scalar:
    """Solve a*x = b by elimination on the multiplication-by-a matrix."""
    ring = a.ring
    dim = ring.dimension
    basis = [Scalar(ring=ring, coords=tuple(Fraction(1 if i == j else 0) for i in range(dim))) for j in range(dim)]
    columns = [(a * e).coords for e in basis]
    rows = [[Fraction(columns[j][i]) for j in range(dim)] + [Fraction(b.coords[i])] for i in range(dim)]

    for col in range(dim):
        pivot = next(r for r in range(col, dim) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [x / lead for x in rows[col]]
        for r in range(dim):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]

    return Scalar(ring=ring, coords=tuple(rows[i][dim] for i in range(dim)))


def zero(ring: RingSpec) -> Scalar:
    return Scalar(ring=ring, coords=tuple(_norm(ring, 0) for _ in range(ring.dimension)))


def one(ring: RingSpec) -> Scalar:
    return from_int(ring, 1)


def from_int(ring: RingSpec, n: int) -> Scalar:
    return Scalar(ring=ring, coords=(_norm(ring, n),) + tuple(_norm(ring, 0) for _ in range(ring.dimension - 1)))


def from_fraction(ring: RingSpec, q: Union[Fraction, int]) -> Scalar:
    q = Fraction(q)
    if ring.kind is RingKind.Char0:
        return Scalar(ring=ring, coords=(q,) + tuple(Fraction(0) for _ in range(ring.dimension - 1)))

    if q.denominator % ring.p == 0:
        raise DenominatorNotInvertible(f'{q} has a denominator divisible by {ring.p}')

    value = q.numerator * pow(q.denominator, ring.p - 2, ring.p)
    return from_int(ring, value)


def from_coords(ring: RingSpec, coords: Sequence[Any]) -> Scalar:
    if len(coords) != ring.dimension:
        raise ValueError(f'{ring.canonical()} needs {ring.dimension} coordinates, got {len(coords)}')
    return Scalar(ring=ring, coords=tuple(_norm(ring, c) for c in coords))


def generator(ring: RingSpec) -> Scalar:
    """The class of x in F_p[x]/(modulus)."""
    if ring.kind is not RingKind.Finite or ring.k == 1:
        raise ValueError(f'{ring.canonical()} has no polynomial generator')
    return from_coords(ring, [1 if i == 1 else 0 for i in range(ring.k)])


def zeta(ring: RingSpec) -> Scalar:
    """The distinguished primitive m-th root of unity of a characteristic-zero ring."""
    if ring.kind is not RingKind.Char0:
        raise TypeError(f'{ring.canonical()} has no distinguished root of unity; use primitive_root_of_unity')
    if ring.m == 1:
        return one(ring)
    if ring.m == 2:
        return from_int(ring, -1)
    return from_coords(ring, [1 if i == 1 else 0 for i in range(ring.dimension)])


def sqrt2(ring: RingSpec) -> Scalar:
    if ring.kind is not RingKind.Char0 or not ring.with_sqrt2:
        raise RingLacksRoots(f'{ring.canonical()} does not contain a distinguished square root of 2')
    return from_coords(ring, [1 if i == ring.zeta_dimension else 0 for i in range(ring.dimension)])


def elements(field: RingSpec) -> Iterator[Scalar]:
    """Every element of a finite field, in canonical order."""
    if field.kind is not RingKind.Finite:
        raise ValueError(f'{field.canonical()} is infinite')

    for coords in itertools.product(range(field.p), repeat=field.k):
        yield Scalar(ring=field, coords=tuple(coords))


def multiplicative_order(x: Scalar) -> int:
    if x.is_zero():
        raise ValueError('zero has no multiplicative order')

    n = 1
    y = x
    while not y.is_one():
        y = y * x
        n += 1
    return n


@lru_cache(maxsize=None)
def primitive_root_of_unity(field: RingSpec, m: int) -> Scalar:
    if m == 1:
        return one(field)

    if field.kind is RingKind.Char0:
        if m == 2:
            return from_int(field, -1)
        if m == 3 and field.m == 3:
            return zeta(field)
        raise NoPrimitiveRoot(f'{field.canonical()} has no primitive {m}-th root of unity')

    q = field.p ** field.k
    if (q - 1) % m != 0:
        raise NoPrimitiveRoot(f'{field.canonical()} has no primitive {m}-th root of unity')

    for x in elements(field):
        if x.is_zero():
            continue
        if (x ** m).is_one() and all(not (x ** j).is_one() for j in range(1, m)):
            return x

    raise AssertionError('unreachable: the multiplicative group is cyclic')


def square_root(field: RingSpec, c: Union[Scalar, int]) -> Optional[Scalar]:
    """The canonical-least square root of c, or None."""
    if isinstance(c, int):
        c = from_int(field, c)

    if field.kind is RingKind.Char0:
        if field.with_sqrt2 and c == from_int(field, 2):
            return sqrt2(field)
        try:
            q = c.to_fraction()
        except ValueError:
            return None
        if q < 0:
            return None
        num, den = _isqrt(q.numerator), _isqrt(q.denominator)
        if num is None or den is None:
            return None
        return from_fraction(field, Fraction(num, den))

    for x in elements(field):
        if x * x == c:
            return x

    return None


def _isqrt(n: int) -> Optional[int]:
    r = int(round(n ** 0.5))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == n:
            return cand
    return None


def extend_for(field: RingSpec, m: int, sqrt2: bool = False) -> RingSpec:
    """The least field extending `field` with a primitive m-th root of unity (and a square root of 2 if asked)."""
    if field.kind is RingKind.Char0:
        new_m = 3 if 3 in (field.m, m) else max(field.m, m)
        return char0(new_m, field.with_sqrt2 or sqrt2)

    if m > 1 and field.p == m:
        raise CharEqualsOrder(f'no primitive {m}-th root of unity exists in characteristic {field.p}')

    j = 1
    while True:
        candidate = field if j == 1 else finite_field(field.p, field.k * j)
        q = field.p ** (field.k * j)
        has_root = (q - 1) % m == 0
        has_sqrt2 = not sqrt2 or square_root(candidate, 2) is not None
        if has_root and has_sqrt2:
            if j > 1:
                logger.debug('extended %s to %s', field.canonical(), candidate.canonical())
            return candidate
        j += 1


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class Embedding:
    """Images of zeta and sqrt(2) defining a homomorphism out of a characteristic-zero ring."""
    source: RingSpec
    target: RingSpec
    zeta: Scalar
    sqrt2: Optional[Scalar]

    def __call__(self, s: Scalar) -> Scalar:
        return reduce(s, self.target, self)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source.canonical(),
            "target": self.target.canonical(),
            "zeta": self.zeta.canonical(),
            "sqrt2": self.sqrt2.canonical() if self.sqrt2 is not None else None,
        }


@lru_cache(maxsize=None)
def default_embedding(source: RingSpec, target: RingSpec) -> Embedding:
    if source.kind is not RingKind.Char0:
        raise TypeError(f'embeddings start from a characteristic-zero ring, not {source.canonical()}')

    if target.kind is RingKind.Finite and source.m > 1 and target.p == source.m:
        raise CharEqualsOrder(f'characteristic {target.p} equals the automorphism order {source.m}')

    if target.kind is RingKind.Char0:
        z = zeta(target) if source.m == 3 else from_int(target, -1 if source.m == 2 else 1)
        root = sqrt2(target) if (source.with_sqrt2 and target.with_sqrt2) else None
        if source.m == 3 and target.m != 3:
            raise NoPrimitiveRoot(f'{target.canonical()} has no primitive cube root of unity')
        return Embedding(source=source, target=target, zeta=z, sqrt2=root)

    z = primitive_root_of_unity(target, source.m)
    root = square_root(target, 2) if source.with_sqrt2 else None

    return Embedding(source=source, target=target, zeta=z, sqrt2=root)


def reduce(s: Scalar, target: RingSpec, embedding: Optional[Embedding] = None) -> Scalar:
    """
    The image of a characteristic-zero element under the homomorphism fixed by
    the images of zeta and sqrt(2).
    """
    if s.ring == target:
        return s

    if embedding is None:
        embedding = default_embedding(s.ring, target)

    zdim = s.ring.zeta_dimension
    result = zero(target)
    for idx, c in enumerate(s.coords):
        if not c:
            continue
        a, b = idx % zdim, idx // zdim
        term = from_fraction(target, Fraction(c))
        if a:
            term = term * embedding.zeta
        if b:
            if embedding.sqrt2 is None:
                raise RingLacksRoots(f'{target.canonical()} has no square root of 2')
            term = term * embedding.sqrt2
        result = result + term

    return result


@attr.s(cache_hash=True, slots=True, kw_only=True, frozen=True, auto_attribs=True)
class FieldEmbedding:
    source: RingSpec
    target: RingSpec
    image_of_generator: Optional[Scalar]

    def __call__(self, s: Scalar) -> Scalar:
        if s.ring != self.source:
            raise TypeError(f'{s.canonical()} is not in {self.source.canonical()}')
        if self.image_of_generator is None:
            return from_int(self.target, int(s.coords[0]))

        result = zero(self.target)
        power = one(self.target)
        for c in s.coords:
            if c:
                result = result + power * int(c)
            power = power * self.image_of_generator
        return result


@lru_cache(maxsize=None)
def field_embedding(source: RingSpec, target: RingSpec) -> FieldEmbedding:
    if not (source.is_finite and target.is_finite) or source.p != target.p or target.k % source.k:
        raise ValueError(f'{source.canonical()} does not embed in {target.canonical()}')

    if source.k == 1 or source == target:
        image = None if source.k == 1 else generator(target)
        return FieldEmbedding(source=source, target=target, image_of_generator=image)

    modulus = [from_int(target, c) for c in source.modulus]
    roots, _ = find_roots(modulus, target)
    assert roots, f'{source.canonical()} must embed in {target.canonical()}'

    return FieldEmbedding(source=source, target=target, image_of_generator=roots[0])


def poly_eval(coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    result = zero(x.ring)
    for c in reversed(coeffs):
        result = result * x + c
    return result


def poly_mul(f: Sequence[Scalar], g: Sequence[Scalar]) -> List[Scalar]:
    if not f or not g:
        return []
    ring = f[0].ring
    out = [zero(ring) for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if a.is_zero():
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


def poly_trim(f: Sequence[Scalar]) -> List[Scalar]:
    out = list(f)
    while out and out[-1].is_zero():
        out.pop()
    return out


def _deflate(f: Sequence[Scalar], x: Scalar) -> List[Scalar]:
    """Divide f by (u - x), assuming f(x) = 0."""
    n = len(f) - 1
    quotient = [zero(x.ring)] * n
    carry = zero(x.ring)
    for i in range(n, 0, -1):
        carry = carry * x + f[i]
        quotient[i - 1] = carry
    return quotient


def find_roots(
    coeffs: Sequence[Scalar],
    field: RingSpec,
    candidates: Optional[Sequence[Scalar]] = None,
) -> Tuple[List[Scalar], bool]:
    """
    Roots of the polynomial with ascending coefficients `coeffs`, with
    multiplicity, and whether they account for its whole degree.

    Without explicit candidates the search is exhaustive over a finite field.
    """
    f = poly_trim(coeffs)
    if not f:
        raise ValueError('the zero polynomial has no finite root multiset')

    if candidates is None:
        pool: Sequence[Scalar] = list(elements(field))
    else:
        seen: Dict[Tuple[Coord, ...], Scalar] = {}
        for c in candidates:
            seen.setdefault(c.coords, c)
        pool = sorted(seen.values(), key=lambda s: s.sort_key())

    degree = len(f) - 1
    roots: List[Scalar] = []
    for x in pool:
        while len(f) > 1 and poly_eval(f, x).is_zero():
            roots.append(x)
            f = _deflate(f, x)

    return roots, len(roots) == degree
