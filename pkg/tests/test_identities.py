import pytest

from hyperloop.coeffring import finite_field, rationals
from hyperloop.hypermod import build_weyl_module, vectors_equal
from hyperloop.rootfold import root_system
from hyperloop.status import AssertionStatus
from hyperloop.verify.identities import (
    check_binomial_sum, check_commutation, check_divided_power_product, check_divided_power_sum, check_identities,
    check_pth_power, commutation_terms,
)

Q = rationals()
F2 = finite_field(2)
F3 = finite_field(3)
F5 = finite_field(5)


def statuses(case):
    return [a.status for a in case.assertions]


def test_divided_power_sum():
    assert check_divided_power_sum(5).ok()


@pytest.mark.parametrize("field", [Q, F2, F3, finite_field(5, 2)])
def test_binomial_sum(field):
    case = check_binomial_sum(5, field)
    assert statuses(case) == [AssertionStatus.Pass]


@pytest.mark.parametrize("field", [Q, F2, F3])
def test_commutation(field):
    assert statuses(check_commutation(3, field)) == [AssertionStatus.Pass]


def test_commutation_terms__on_the_highest_vector():
    module = build_weyl_module(root_system('A1'), (2,), Q)
    v = module.basis_vector(module.hv)
    lhs, rhs = commutation_terms(module, 1, 1, v)
    assert lhs
    assert vectors_equal(lhs, rhs)


def test_divided_power_product():
    assert statuses(check_divided_power_product(F5)) == [AssertionStatus.Pass]


def test_divided_power_product__skipped_in_characteristic_two():
    case = check_divided_power_product(F2)
    assert statuses(case) == [AssertionStatus.Skipped]
    assert case.assertions[0].reason == 'not applicable'
    assert case.ok()


def test_pth_power():
    assert statuses(check_pth_power(F3)) == [AssertionStatus.Pass]


@pytest.mark.parametrize("field", [Q, F2])
def test_pth_power__skipped(field):
    assert statuses(check_pth_power(field)) == [AssertionStatus.Skipped]


def test_check_identities__collects_every_case():
    report = check_identities(3, [Q])
    assert report.suite == 'identities'
    assert len(report.cases) == 5
    assert report.ok()
    assert report.counts()["skipped"] == 1
