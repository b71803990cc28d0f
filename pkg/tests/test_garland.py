import pytest

from hyperloop.status import AssertionStatus
from hyperloop.verify.casegrid import build_twisted_module, module_spec
from hyperloop.verify.garland import check_garland_on_hw, check_twisted, double_sides
from hyperloop.verify.report import GarlandPart


def test_basic_relation__a1_evaluation_module():
    spec = module_spec({"type": "A1", "field": "Q", "factors": [{"weight": [1], "point": 2}]})
    report = check_garland_on_hw(spec, k_max=2)
    assert report.suite == 'garland'
    assert len(report.cases) == 1
    assert report.cases[0].case["part"] == GarlandPart.Basic.value
    assert report.ok()
    assert report.counts()["pass"] > 0


def test_basic_relation__tensor_product():
    spec = module_spec({
        "type": "A1",
        "field": "Q",
        "factors": [{"weight": [1], "point": 2}, {"weight": [1], "point": 3}],
    })
    assert check_garland_on_hw(spec, k_max=2).ok()


def test_twisted_parts__a2_flip():
    spec = module_spec({"type": "A2", "auto": "flip", "field": "F5", "factors": [{"weight": [1], "point": 2}]})
    report = check_garland_on_hw(spec, k_max=2)

    parts = {case.case["part"]: case for case in report.cases}
    assert list(parts) == ["a", "b", "c-i", "c-ii", "c-iii", "c-iv"]

    for name in ("a", "b"):
        (only,) = parts[name].assertions
        assert only.status is AssertionStatus.Skipped
        assert only.reason == 'rank'
    (only,) = parts["c-iv"].assertions
    assert only.reason == 'indeterminate remainder'
    for name in ("c-i", "c-iii"):
        assert parts[name].assertions
        assert all(a.status is AssertionStatus.Pass for a in parts[name].assertions)


def test_twisted_parts__leading_term_of_c_ii():
    spec = module_spec({"type": "A2", "auto": "flip", "field": "F5", "factors": [{"weight": [1], "point": 2}]})
    report = check_garland_on_hw(spec, k_max=2)
    (case,) = [case for case in report.cases if case.case["part"] == GarlandPart.CII.value]

    first, second = case.assertions
    # r = 0 is part (c)(i) with a = 0
    assert first.name == 'mu=[1] k=1 r=0'
    assert first.status is AssertionStatus.Pass

    # (x-_{2mu,1} t)^(2) kills the highest vector of the three-dimensional module
    assert second.name == 'mu=[1] k=1 r=1'
    assert second.status is AssertionStatus.Fail
    assert second.witness["lhs"] == {}
    assert second.witness["rhs"]
    assert not report.ok()


def test_twisted_parts__even_shifts_of_c_i():
    spec = module_spec({"type": "A2", "auto": "flip", "field": "F7", "factors": [{"weight": [1], "point": 2}]})
    (case,) = [case for case in check_twisted(spec, k_max=2, shifts=(0, 1, 2)) if case.case["part"] == GarlandPart.CI.value]
    names = [a.name for a in case.assertions]
    assert any(' s=2 ' in name for name in names)
    assert not any(' s=1 ' in name for name in names)
    assert all(a.status is AssertionStatus.Pass for a in case.assertions)


def test_double_sides__odd_shift():
    spec = module_spec({"type": "A2", "auto": "flip", "field": "F7", "factors": [{"weight": [1], "point": 2}]})
    tm = build_twisted_module(spec)
    with pytest.raises(ValueError):
        double_sides(tm, (1,), 1, 1, 0, 1, tm.basis_vector(tm.hv))


@pytest.mark.parametrize("type_name, auto, weight, point", [
    ("A3", "flip", [1, 0], 2),
    ("A3", "flip", [0, 1], 3),
    ("D4", "rot3", [1, 0], 2),
])
def test_twisted_parts__short_and_long_roots(type_name, auto, weight, point):
    spec = module_spec({"type": type_name, "auto": auto, "field": "F7", "factors": [{"weight": weight, "point": point}]})
    report = check_garland_on_hw(spec, k_max=2)
    parts = {case.case["part"]: case for case in report.cases}

    for name in ("a", "b"):
        assert parts[name].assertions
        assert all(a.status is AssertionStatus.Pass for a in parts[name].assertions)
    for name in ("c-i", "c-ii", "c-iii", "c-iv"):
        (only,) = parts[name].assertions
        assert only.status is AssertionStatus.Skipped
        assert only.reason == 'rank'
    assert report.ok()
