import pytest

from hyperloop.coeffring import finite_field
from hyperloop.exception import CharEqualsOrder, CharTwoA2n
from hyperloop.lweights import standard_decomposition
from hyperloop.parse import parse_lweight
from hyperloop.rootfold import folding
from hyperloop.status import AssertionStatus
from hyperloop.verify.restriction import SimplicityVerdict, build_omega_module, check_restriction_theorem

F5 = finite_field(5)


def test_simplicity_verdict():
    assert SimplicityVerdict(window=2, rank=3, singular=1, dimension=3).simple
    assert not SimplicityVerdict(window=2, rank=3, singular=2, dimension=3).simple
    assert not SimplicityVerdict(window=2, rank=2, singular=1, dimension=3).simple


def test_build_omega_module__a2_flip():
    fd = folding('A2', 'flip')
    tm = build_omega_module(parse_lweight('w1@2', fd, F5), fd)
    assert tm.dimension == 3
    assert tm.field.canonical() == 'F5^2'


def test_restriction_theorem__a2_flip():
    fd = folding('A2', 'flip')
    report = check_restriction_theorem(parse_lweight('w1@2', fd, F5), F5, fd)
    assert report.suite == 'restriction'
    assert len(report.cases) == 2
    assert [a.name for a in report.cases[0].assertions] == ['restriction is simple', 'Drinfeld polynomial is pi']
    assert report.cases[0].case["dimension"] == 3
    assert report.ok()


def test_restriction_theorem__characteristic_equals_order():
    fd = folding('D4', 'rot3')
    field = finite_field(3)
    with pytest.raises(CharEqualsOrder):
        check_restriction_theorem(parse_lweight('w1@2', fd, field), field, fd)


def test_restriction_theorem__a2n_in_characteristic_two():
    fd = folding('A2', 'flip')
    field = finite_field(2)
    with pytest.raises(CharTwoA2n):
        build_omega_module(parse_lweight('', fd, field), fd)


@pytest.mark.parametrize("type_name, p, pi", [
    ("A3", 7, "w1@2,w1@3"),
    ("A3", 5, "w1@2,w2@3"),
    ("A2", 5, "w1@2,w1@3"),
    ("A2", 7, "w1@2,w1@5"),
])
def test_restriction_theorem__two_points(type_name, p, pi):
    fd = folding(type_name, 'flip')
    field = finite_field(p)
    report = check_restriction_theorem(parse_lweight(pi, fd, field), field, fd)
    assert len(report.cases) == 2
    assert all(a.status is AssertionStatus.Pass for a in report.cases[0].assertions)
    assert report.ok()


def test_standard_decomposition__c2_with_two_blocks():
    fd = folding('A3', 'flip')
    field = finite_field(7)
    sd = standard_decomposition(parse_lweight('w1@2,w1@3', fd, field), fd)
    # 2 and 3 have different squares in F7
    assert len(sd.blocks) == 2
    tm = build_omega_module(parse_lweight('w1@2,w1@3', fd, field), fd)
    assert tm.fd.folded.name == 'C2'
    assert tm.dimension == 16
