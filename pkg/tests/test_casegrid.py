import pytest

from hyperloop.exception import ParseError, ZeroEvaluationPoint
from hyperloop.verify.casegrid import build_loop_module, build_twisted_module, module_spec


def test_module_spec__parses_an_entry():
    spec = module_spec({"type": "A3", "auto": "flip", "field": "F7", "factors": [{"weight": [1, 0], "point": 2}]})
    assert spec.twisted
    assert spec.folding().base.name == 'A3'
    assert spec.to_dict() == {
        "type": "A3",
        "auto": "flip",
        "field": "F7",
        "factors": [{"weight": [1, 0], "point": 2}],
    }


@pytest.mark.parametrize("entry", [
    {"type": "A1", "field": "Q"},
    {"type": "A1", "field": "Q", "factors": [{"point": 2}]},
    {"type": "A1", "field": "Q", "factors": None},
    {"type": "A1", "field": "F6", "factors": []},
])
def test_module_spec__rejects_malformed_entries(entry):
    with pytest.raises(ParseError):
        module_spec(entry)


def test_module_spec__untwisted_has_no_folding():
    spec = module_spec({"type": "A1", "field": "Q", "factors": []})
    assert not spec.twisted
    with pytest.raises(ValueError):
        spec.folding()


def test_build_loop_module__tensor_of_factors():
    spec = module_spec({
        "type": "A1",
        "field": "Q",
        "factors": [{"weight": [1], "point": 2}, {"weight": [2], "point": 3}],
    })
    lm = build_loop_module(spec)
    assert lm.dimension == 6
    assert lm.highest_weight == (3,)


def test_build_loop_module__point_vanishing_in_the_field():
    spec = module_spec({"type": "A1", "field": "F5", "factors": [{"weight": [1], "point": 5}]})
    with pytest.raises(ZeroEvaluationPoint):
        build_loop_module(spec)


def test_build_twisted_module__restricted_weight():
    spec = module_spec({"type": "A3", "auto": "flip", "field": "F7", "factors": [{"weight": [1, 0], "point": 2}]})
    tm = build_twisted_module(spec)
    assert tm.highest_weight == (1, 0)
    assert tm.dimension == 4
