import pytest

from hyperloop.exception import InvalidType, NotAnAutomorphism
from hyperloop.rootfold import (
    automorphism, extend_weight, folding, from_permutation, in_P0_sigma_plus, orbit_size, restrict_weight,
    root_system, symmetrizer, weyl_orbit,
)


@pytest.mark.parametrize("name,count,highest", [
    ("A1", 1, (1,)),
    ("A3", 6, (1, 1, 1)),
    ("B2", 4, (1, 2)),
    ("C2", 4, (2, 1)),
    ("G2", 6, (3, 2)),
    ("D4", 12, (1, 2, 1, 1)),
    ("F4", 24, (2, 3, 4, 2)),
    ("E6", 36, (1, 2, 2, 3, 2, 1)),
])
def test_root_system__positive_roots(name, count, highest):
    rs = root_system(name)
    assert len(rs.positive_roots) == count
    assert rs.highest_root == highest
    assert rs.dimension == 2 * count + rs.rank


def test_root_system__simple_roots_come_first():
    rs = root_system('A3')
    assert rs.positive_roots[:3] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@pytest.mark.parametrize("name", ["X3", "A0", "B1", "D3", "E5", "G3", ""])
def test_root_system__invalid(name):
    with pytest.raises(InvalidType):
        root_system(name)


def test_symmetrizer__short_roots_have_length_one():
    assert symmetrizer(root_system('B2').cartan) == (2, 1)
    assert symmetrizer(root_system('G2').cartan) == (1, 3)
    assert symmetrizer(root_system('A3').cartan) == (1, 1, 1)


def test_root_lengths():
    rs = root_system('C2')
    assert not rs.is_long((1, 0))
    assert rs.is_long((0, 1))
    assert not rs.is_long((1, 1))
    assert rs.is_long((2, 1))


def test_weyl_orbit__sizes():
    assert len(weyl_orbit(root_system('A2'), (1, 0))) == 3
    assert len(weyl_orbit(root_system('A2'), (1, 1))) == 6
    assert len(weyl_orbit(root_system('B2'), (0, 1))) == 4


def test_dominant_representative():
    rs = root_system('A2')
    for mu in weyl_orbit(rs, (2, 1)):
        assert rs.dominant(mu) == (2, 1)
    assert rs.antidominant((1, 0)) == (0, -1)


@pytest.mark.parametrize("type_name,auto,m,folded,pattern", [
    ("A2", "flip", 2, "A1", "±R_0 ∪ ±2R_s"),
    ("A4", "flip", 2, "B2", "±R_0 ∪ ±2R_s"),
    ("A3", "flip", 2, "C2", "±R_s"),
    ("A5", "flip", 2, "C3", "±R_s"),
    ("D4", "flip", 2, "B3", "±R_s"),
    ("E6", "flip", 2, "F4", "±R_s"),
    ("D4", "rot3", 3, "G2", "±R_s"),
    ("A1", "id", 1, "A1", "none"),
])
def test_folding_table(type_name, auto, m, folded, pattern):
    row = folding(type_name, auto).table_row()
    assert row == {"type": type_name, "m": m, "folded_type": folded, "wt_g1": pattern}


@pytest.mark.parametrize("type_name,auto", [("A3", "flip"), ("A5", "flip"), ("D4", "flip"), ("D4", "rot3")])
def test_folding__restriction_onto_folded_roots(type_name, auto):
    fd = folding(type_name, auto)
    assert set(fd.restricted_roots()) == set(fd.folded.positive_roots)
    assert not fd.double_short


@pytest.mark.parametrize("type_name", ["A2", "A4"])
def test_folding__a2n_restriction_includes_doubled_short_roots(type_name):
    fd = folding(type_name, 'flip')
    assert fd.is_a2n
    assert set(fd.restricted_roots()) == set(fd.folded.positive_roots) | fd.double_short
    assert fd.double_short == frozenset(tuple(2 * x for x in mu) for mu in fd.short) & set(fd.restriction)
    # the fixed roots are exactly the ones restricting into 2R_s
    for alpha, mu in enumerate(fd.restriction):
        assert (orbit_size(fd, alpha) == 1) == fd.is_double_short(mu)


def test_folding__a3_orbits_in_bourbaki_order():
    fd = folding('A3', 'flip')
    assert fd.node_orbits == ((0, 2), (1,))
    assert fd.o_map == (0, 1)
    assert fd.is_short((1, 0))
    assert not fd.is_short((0, 1))


def test_folding__d4_triality():
    fd = folding('D4', 'rot3')
    assert fd.m == 3
    assert fd.node_orbits == ((0, 2, 3), (1,))
    assert sorted(fd.gamma) == [1] * 3 + [3] * 9
    assert len(fd.representatives) == 6


def test_folding__graded_weights():
    fd = folding('A3', 'flip')
    assert fd.has_weight((1, 0), 0)
    assert fd.has_weight((1, 0), 1)
    assert fd.has_weight((0, 1), 0)
    assert not fd.has_weight((0, 1), 1)
    assert fd.has_weight((-1, 0), -1) == fd.has_weight((-1, 0), 1)

    a2 = folding('A2', 'flip')
    assert a2.has_weight((2,), 1)
    assert not a2.has_weight((2,), 0)


def test_restrict_and_extend_weight():
    fd = folding('A3', 'flip')
    assert extend_weight(fd, (1, 2)) == (1, 2, 0)
    assert restrict_weight(fd, (1, 2, 0)) == (1, 2)
    assert restrict_weight(fd, (1, 0, 1)) == (2, 0)
    for lam0 in [(0, 0), (1, 0), (0, 1), (2, 3)]:
        assert restrict_weight(fd, extend_weight(fd, lam0)) == lam0


def test_in_P0_sigma_plus():
    fd = folding('A3', 'flip')
    assert in_P0_sigma_plus(fd, (1, 0))
    assert not in_P0_sigma_plus(fd, (-1, 0))
    assert not in_P0_sigma_plus(fd, (1,))


def test_automorphism__rejects():
    with pytest.raises(NotAnAutomorphism):
        automorphism(root_system('A1'), 'flip')
    with pytest.raises(NotAnAutomorphism):
        automorphism(root_system('B2'), 'flip')
    with pytest.raises(NotAnAutomorphism):
        automorphism(root_system('A3'), 'rot3')
    with pytest.raises(NotAnAutomorphism):
        automorphism(root_system('A3'), 'swap')
    with pytest.raises(NotAnAutomorphism):
        from_permutation(root_system('A3'), [1, 0, 2])


def test_automorphism__orders():
    assert automorphism(root_system('A3'), 'id').order == 1
    assert automorphism(root_system('A3'), 'flip').order == 2
    assert automorphism(root_system('D4'), 'rot3').order == 3
