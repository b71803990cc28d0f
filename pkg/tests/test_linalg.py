from fractions import Fraction

from hyperloop.linalg import EchelonBasis, IntLattice, add_into, closure, hermite_normal_form, nullspace, rref

ONE = Fraction(1)


def test_add_into__drops_zeros():
    v = {0: ONE, 1: Fraction(2)}
    add_into(v, {0: ONE}, -1)
    assert v == {1: 2}


def test_echelon_basis__express():
    eb = EchelonBasis(track=True)
    assert eb.insert({0: ONE, 1: ONE})
    assert eb.insert({1: ONE})
    assert not eb.insert({0: Fraction(2), 1: Fraction(3)})
    assert eb.rank == 2
    assert eb.express({0: ONE}) == {0: 1, 1: -1}
    assert eb.express({2: ONE}) is None


def test_rref__fully_reduced():
    reduced = rref([{0: ONE, 1: Fraction(2)}, {0: ONE, 1: Fraction(3)}])
    assert reduced == {0: {0: 1}, 1: {1: 1}}


def test_nullspace():
    basis = nullspace([{0: ONE, 1: ONE}], [0, 1, 2], ONE)
    assert len(basis) == 2
    for v in basis:
        assert v.get(0, 0) + v.get(1, 0) == 0


def test_closure__shift_operator():
    def shift(v):
        return {i + 1: c for i, c in v.items() if i < 3}

    assert closure([{0: ONE}], [shift]).rank == 4
    assert closure([{0: ONE}], [shift], limit=2).rank == 2
    assert closure([{}], [shift]).rank == 0


def test_hermite_normal_form__contains():
    lattice = hermite_normal_form(IntLattice(dimension=2, generators=((2, 0), (0, 2), (1, 1))))
    assert lattice.contains((1, 1))
    assert lattice.contains((2, 0))
    assert not lattice.contains((1, 0))
    assert lattice.coordinates((1, 0)) == [Fraction(1), Fraction(-1, 2)]
