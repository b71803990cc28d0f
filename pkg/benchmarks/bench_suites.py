import pytest

from hyperloop.coeffring import finite_field
from hyperloop.verify.heisenberg import check_heisenberg_identity
from hyperloop.verify.identities import check_commutation


@pytest.mark.benchmark(group="identities")
def test_heisenberg_identity(benchmark):
    report = benchmark(check_heisenberg_identity, 6)
    assert report.ok()


@pytest.mark.benchmark(group="identities")
def test_commutation__f3(benchmark):
    case = benchmark(check_commutation, 4, finite_field(3))
    assert case.ok()
