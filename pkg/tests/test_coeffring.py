from fractions import Fraction
import random

import pytest

from hyperloop.coeffring import (
    char0, rationals, finite_field, from_int, from_fraction, one, zero, zeta, sqrt2, elements,
    primitive_root_of_unity, square_root, extend_for, reduce, field_embedding, find_roots, multiplicative_order,
)
from hyperloop.dotenv import seed
from hyperloop.exception import CharEqualsOrder, DenominatorNotInvertible, NoPrimitiveRoot

F5 = finite_field(5)
F7 = finite_field(7)
F25 = finite_field(5, 2)

SEED = seed()


def test_canonical_names():
    assert rationals().canonical() == 'Q'
    assert F7.canonical() == 'F7'
    assert F25.canonical() == 'F5^2'
    assert char0(3, True).canonical() == 'Q(z3,s2)'
    assert char0(2, True).canonical() == 'Q(s2)'


def test_prime_field_arithmetic():
    assert from_int(F7, 10).canonical() == '3'
    assert from_int(F7, 3).inverse() == from_int(F7, 5)
    assert from_int(F7, 3) / 3 == one(F7)
    assert from_int(F7, 2) ** -1 == from_int(F7, 4)
    assert -from_int(F7, 1) == from_int(F7, 6)


def test_extension_field__every_nonzero_element_is_invertible():
    for x in elements(F25):
        if x.is_zero():
            continue
        assert (x * x.inverse()).is_one()


def test_extension_field__ring_axioms():
    rng = random.Random(SEED)
    pool = list(elements(F25))
    for _ in range(50):
        a, b, c = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a - a == zero(F25)


def test_extension_field__multiplicative_group_is_cyclic():
    orders = [multiplicative_order(x) for x in elements(F25) if not x.is_zero()]
    assert max(orders) == 24


def test_char0__zeta_is_a_primitive_cube_root():
    ring = char0(3)
    z = zeta(ring)
    assert z != one(ring)
    assert (z ** 3).is_one()
    assert (z * z + z + 1).is_zero()


def test_char0__sqrt2():
    ring = char0(1, with_sqrt2=True)
    assert sqrt2(ring) * sqrt2(ring) == from_int(ring, 2)
    assert (sqrt2(ring).inverse() * 2) == sqrt2(ring)


def test_char0__fractions():
    q = rationals()
    assert from_fraction(q, Fraction(1, 2)) * 2 == one(q)
    assert from_fraction(q, Fraction(-3, 4)).to_fraction() == Fraction(-3, 4)


def test_from_fraction__denominator_divisible_by_p():
    with pytest.raises(DenominatorNotInvertible):
        from_fraction(F5, Fraction(1, 5))
    assert from_fraction(F5, Fraction(1, 2)) == from_int(F5, 3)


def test_primitive_root_of_unity():
    assert primitive_root_of_unity(F7, 3) == from_int(F7, 2)
    assert primitive_root_of_unity(F5, 2) == from_int(F5, 4)
    assert primitive_root_of_unity(rationals(), 2) == from_int(rationals(), -1)
    with pytest.raises(NoPrimitiveRoot):
        primitive_root_of_unity(F5, 3)


def test_square_root():
    assert square_root(F7, 2) == from_int(F7, 3)
    assert square_root(F5, 2) is None
    assert square_root(rationals(), 4) == from_int(rationals(), 2)
    assert square_root(rationals(), 2) is None


def test_extend_for():
    assert extend_for(F7, 3) == F7
    assert extend_for(F5, 3) == F25
    assert extend_for(F5, 2, sqrt2=True) == F25
    assert extend_for(rationals(), 3, sqrt2=True) == char0(3, True)
    with pytest.raises(CharEqualsOrder):
        extend_for(finite_field(3), 3)


def test_reduce__zeta_goes_to_the_least_primitive_root():
    z = zeta(char0(3))
    assert reduce(z, F7) == from_int(F7, 2)
    assert reduce(from_fraction(char0(3), Fraction(1, 2)), F7) == from_int(F7, 4)


def test_reduce__is_a_homomorphism():
    ring = char0(3)
    z = zeta(ring)
    a = z * 3 + 1
    b = z * z - 2
    assert reduce(a * b, F7) == reduce(a, F7) * reduce(b, F7)
    assert reduce(a + b, F7) == reduce(a, F7) + reduce(b, F7)


def test_field_embedding__prime_field():
    embed = field_embedding(F5, F25)
    for n in range(5):
        assert embed(from_int(F5, n)) == from_int(F25, n)


def test_find_roots():
    coeffs = [from_int(F7, 6), from_int(F7, -5), one(F7)]
    roots, split = find_roots(coeffs, F7)
    assert split
    assert roots == [from_int(F7, 2), from_int(F7, 3)]

    roots, split = find_roots([one(F7), zero(F7), one(F7)], F7)
    assert not split
    assert roots == []
