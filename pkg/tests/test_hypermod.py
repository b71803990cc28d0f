import logging

import pytest

from hyperloop.character import full_character, weyl_dimension
from hyperloop.coeffring import finite_field, one, rationals
from hyperloop.exception import CharTwoA2n, DegreeOutOfRange
from hyperloop.hypermod import (
    apply_divided_power, build_simple_module, build_weyl_module, character, cyclic_closure, is_simple, lowest_weight_check,
    singular_vectors, tensor, vectors_equal,
)
from hyperloop.rootfold import folding, root_system

F2 = finite_field(2)
F3 = finite_field(3)
F5 = finite_field(5)


def test_weyl_module__a1_shape():
    module = build_weyl_module(root_system('A1'), (1,), rationals())
    assert module.dimension == 2
    assert module.hv == 0
    assert module.k_max == 2
    assert module.highest_weight == (1,)


@pytest.mark.parametrize("name, lam, field", [
    ("A1", (3,), rationals()),
    ("A2", (1, 1), F3),
    ("A2", (1, 1), rationals()),
    ("G2", (1, 0), rationals()),
    ("A3", (1, 0, 1), rationals()),
])
def test_weyl_module__character_is_field_independent(name, lam, field):
    rs = root_system(name)
    module = build_weyl_module(rs, lam, field)
    assert module.dimension == weyl_dimension(rs, lam)
    assert character(module) == full_character(rs, lam)


def test_weyl_module__not_simple_in_small_characteristic(caplog):
    caplog.set_level(logging.DEBUG)
    module = build_weyl_module(root_system('A1'), (2,), F2)
    assert module.dimension == 3
    assert not is_simple(module)
    assert len(singular_vectors(module)) == 2


@pytest.mark.parametrize("name, lam, field, expected", [
    ("A1", (2,), F2, 2),
    ("A1", (3,), F3, 2),
    ("A1", (3,), F5, 4),
    ("A2", (1, 1), F3, 7),
    ("A2", (1, 1), F5, 8),
])
def test_simple_module__dimension(name, lam, field, expected):
    module = build_simple_module(root_system(name), lam, field)
    assert module.dimension == expected
    assert is_simple(module)
    assert character(module).is_weyl_invariant(module.rs)


def test_simple_module__lowest_weight_generates():
    module = build_simple_module(root_system('A1'), (2,), F2)
    assert set(module.weight_spaces) == {(2,), (-2,)}
    assert lowest_weight_check(module)


def test_simple_module__label_marks_the_quotient():
    module = build_simple_module(root_system('A1'), (2,), F2)
    assert module.label.startswith('V(')


def test_divided_power__sl2_relation():
    module = build_weyl_module(root_system('A1'), (1,), rationals())
    v = module.basis_vector(module.hv)
    lowered = apply_divided_power(module, 0, -1, 1, v)
    assert lowered
    # x+ x- v = h v = v on a weight one vector
    assert vectors_equal(apply_divided_power(module, 0, 1, 1, lowered), v)
    assert apply_divided_power(module, 0, 1, 1, v) == {}


def test_divided_power__degree_zero_is_identity():
    module = build_weyl_module(root_system('A1'), (1,), rationals())
    v = module.basis_vector(1)
    assert apply_divided_power(module, 0, -1, 0, v) == v


def test_divided_power__out_of_range():
    module = build_weyl_module(root_system('A1'), (1,), rationals())
    v = module.basis_vector(module.hv)
    with pytest.raises(DegreeOutOfRange):
        apply_divided_power(module, 0, -1, module.k_max + 1, v)
    with pytest.raises(DegreeOutOfRange):
        module.operator(0, -1, -1)


def test_tensor__decomposes_in_characteristic_zero():
    rs = root_system('A1')
    v1 = build_weyl_module(rs, (1,), rationals())
    product = tensor(v1, v1)
    assert product.dimension == 4
    assert product.highest_weight == (2,)
    assert character(product) == full_character(rs, (1,)).times(full_character(rs, (1,)))
    assert not is_simple(product)
    assert len(singular_vectors(product)) == 2


def test_tensor__rejects_mixed_fields():
    rs = root_system('A1')
    with pytest.raises(ValueError):
        tensor(build_weyl_module(rs, (1,), F3), build_weyl_module(rs, (1,), F5))


def test_folded_module__uses_the_fixed_point_algebra():
    module = build_weyl_module(folding('A3', 'flip'), (1, 0), rationals())
    assert module.rs.name == 'C2'
    assert module.dimension == 4
    assert module.basis_vector(0) == {0: one(rationals())}


def test_folded_module__a2n_in_characteristic_two():
    with pytest.raises(CharTwoA2n):
        build_weyl_module(folding('A2', 'flip'), (1,), F2)


@pytest.mark.parametrize("name, lam, field", [
    ("A1", (2,), F2),
    ("A2", (1, 1), F3),
    ("B2", (1, 1), F3),
])
def test_simple_module__every_vector_generates(name, lam, field):
    module = build_simple_module(root_system(name), lam, field)
    for idx in range(module.dimension):
        assert cyclic_closure(module, module.basis_vector(idx)).rank == module.dimension
