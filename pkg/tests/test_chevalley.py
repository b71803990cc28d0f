import pytest

from hyperloop.chevalley import (
    adapted_basis, basis_relation_violations, grading_violations, jacobi_violations, sl2_triple, structure_constants,
    twisted_jacobi_violations,
)
from hyperloop.coeffring import from_int, one
from hyperloop.exception import NotSl2
from hyperloop.loopaction import adapted_twisted_basis
from hyperloop.rootfold import automorphism, folding, root_system


def string_below(rs, a, b):
    """The largest p with beta - p alpha a root."""
    alpha, beta = rs.positive_roots[a], rs.positive_roots[b]
    p = 0
    while True:
        lower = tuple(y - (p + 1) * x for x, y in zip(alpha, beta))
        if not (rs.is_positive_root(lower) or rs.is_positive_root(tuple(-c for c in lower))):
            return p
        p += 1


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_structure_constants__jacobi(name):
    assert jacobi_violations(structure_constants(root_system(name))) == []


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_structure_constants__chevalley_magnitudes(name):
    rs = root_system(name)
    cb = structure_constants(rs)
    assert cb.n_plus
    for (a, b), n in cb.n_plus.items():
        assert abs(n) == string_below(rs, a, b) + 1
        assert cb.n_plus[(b, a)] == -n


def test_structure_constants__h_acts_by_labels():
    cb = structure_constants(root_system('B2'))
    # [h_i, x+_alpha] = alpha(h_i) x+_alpha
    assert cb.bracket_symbols(('h', 0, 1), ('x', 1, 0)) == {('x', 1, 0): -2}
    assert cb.bracket_symbols(('x', 1, 0), ('x', -1, 0)) == {('h', 0, 0): 1}


def test_adapted_basis__fixed_root_signs():
    rs = root_system('A2')
    sigma = automorphism(rs, 'flip')
    cb = adapted_basis(structure_constants(rs), sigma)
    assert cb.sigma == sigma
    assert cb.sigma_signs[rs.index_of((1, 1))] == -1

    rs = root_system('A3')
    sigma = automorphism(rs, 'flip')
    cb = adapted_basis(structure_constants(rs), sigma)
    assert cb.sigma_signs[rs.index_of((1, 1, 1))] == 1
    assert jacobi_violations(cb) == []


@pytest.mark.parametrize("type_name,auto", [
    ("A2", "flip"), ("A3", "flip"), ("A4", "flip"), ("A5", "flip"), ("D4", "rot3"),
])
def test_twisted_basis__jacobi(type_name, auto):
    tb = adapted_twisted_basis(folding(type_name, auto))
    assert len(tb.keys) == tb.cb.rs.dimension
    assert twisted_jacobi_violations(tb) == []


@pytest.mark.parametrize("type_name,auto", [("A2", "flip"), ("A3", "flip"), ("A4", "flip"), ("D4", "rot3")])
def test_twisted_basis__grading_and_basis_relations(type_name, auto):
    tb = adapted_twisted_basis(folding(type_name, auto))
    assert grading_violations(tb) == []
    assert basis_relation_violations(tb) == []


def test_twisted_basis__ring():
    assert adapted_twisted_basis(folding('A2', 'flip')).ring.canonical() == 'Q(s2)'
    assert adapted_twisted_basis(folding('D4', 'rot3')).ring.canonical() == 'Q(z3)'
    assert adapted_twisted_basis(folding('A3', 'flip')).ring.canonical() == 'Q'


def moving_roots(fd):
    """Representatives of O whose sigma-orbit has more than one root."""
    return [alpha for alpha in fd.representatives if len(fd.root_orbits[alpha]) > 1]


def doubles(fd, mu):
    return fd.is_a2n and fd.is_double_short(tuple(2 * x for x in mu))


@pytest.mark.parametrize("type_name,auto", [("A2", "flip"), ("A3", "flip"), ("A4", "flip"), ("D4", "rot3")])
def test_twisted_bracket__h1_shifts_the_grade(type_name, auto):
    fd = folding(type_name, auto)
    tb = adapted_twisted_basis(fd)
    unit = one(tb.ring)
    for alpha in moving_roots(fd):
        mu = fd.restriction[alpha]
        h = tb.expand(tb.h_mu(mu, 1))
        # 3 on the short roots of A_2n, 2 otherwise
        factor = 3 if doubles(fd, mu) else 2
        for sign in (1, -1):
            for eps in range(fd.m):
                found = tb.bracket(h, {tb.x_key(mu, sign, eps): unit})
                assert found == {tb.x_key(mu, sign, eps + 1): from_int(tb.ring, sign * factor)}


@pytest.mark.parametrize("type_name", ["A2", "A4"])
def test_twisted_bracket__short_roots_of_a2n(type_name):
    fd = folding(type_name, 'flip')
    tb = adapted_twisted_basis(fd)
    unit = one(tb.ring)
    short = [fd.restriction[alpha] for alpha in moving_roots(fd) if doubles(fd, fd.restriction[alpha])]
    assert short

    for mu in short:
        for eps in (0, 1):
            for eps2 in (0, 1):
                found = tb.bracket({tb.x_key(mu, 1, eps): unit}, {tb.x_key(mu, -1, eps2): unit})
                expected = {key: 2 * c for key, c in tb.expand(tb.h_mu(mu, eps + eps2)).items()}
                assert found == expected


@pytest.mark.parametrize("type_name", ["A2", "A4"])
def test_twisted_bracket__doubled_short_roots_of_a2n(type_name):
    fd = folding(type_name, 'flip')
    tb = adapted_twisted_basis(fd)
    unit = one(tb.ring)
    short = [fd.restriction[alpha] for alpha in moving_roots(fd) if doubles(fd, fd.restriction[alpha])]

    for mu in short:
        eta = tuple(2 * x for x in mu)
        # x_{eta,eps} vanishes unless eps = 1
        assert tb.x_key(eta, 1, 0) not in tb.elements
        found = tb.bracket({tb.x_key(eta, 1, 1): unit}, {tb.x_key(eta, -1, 1): unit})
        assert found == tb.expand(tb.h_mu(mu, 0))


def test_sl2_triple__doubled_short_root():
    tb = adapted_twisted_basis(folding('A2', 'flip'))
    triple = sl2_triple(tb, (2,), 1)
    assert triple.h_factor == one(tb.ring)


def test_sl2_triple__doubled_short_root_needs_odd_grade():
    tb = adapted_twisted_basis(folding('A2', 'flip'))
    with pytest.raises(NotSl2):
        sl2_triple(tb, (2,), 0)


def test_sl2_triple__a3_short_root():
    tb = adapted_twisted_basis(folding('A3', 'flip'))
    triple = sl2_triple(tb, (1, 0), 1)
    assert triple.h_factor == one(tb.ring)
    # the labels of mu = alpha_1 restricted are (2, -1)
    assert tb.pairing((2, -1), (1, 0)) == 2 * one(tb.ring)
