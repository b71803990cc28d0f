from fractions import Fraction

import pytest

from hyperloop.chevalley import structure_constants
from hyperloop.coeffring import finite_field, from_fraction, from_int, one, rationals
from hyperloop.exception import CharEqualsOrder, DegreeOutOfRange, ZeroEvaluationPoint
from hyperloop.hypermod import build_simple_module
from hyperloop.loopaction import (
    apply_product, apply_twisted, eval_action, ev_sigma_lambda, evaluation_module, hbinom, lambda_op, lambda_series,
    lambda_sigma_op, lambda_sigma_series, loop_tensor, nontwisted, twisted_evaluation_module, x_series_coefficient,
    x_series_power,
)
from hyperloop.rootfold import folding, root_system

Q = rationals()
F5 = finite_field(5)
F7 = finite_field(7)


def a1_evaluation(point, field=Q, lam=(1,)):
    rs = root_system('A1')
    return evaluation_module(build_simple_module(rs, lam, field), point, structure_constants(rs))


def test_evaluation_module__shape():
    lm = a1_evaluation(2)
    assert lm.dimension == 2
    assert lm.k_max == 2
    assert lm.hv == 0
    assert lm.highest_weight == (1,)
    assert lm.to_dict()["factors"] == [{"module": lm.factors[0].module.label, "point": "2"}]


def test_evaluation_module__zero_point():
    with pytest.raises(ZeroEvaluationPoint):
        a1_evaluation(0)


def test_apply_product__scales_by_powers_of_the_point():
    lm = a1_evaluation(2)
    hv = lm.basis_vector(lm.hv)
    # x+ t^1 after x- t^2 acts as 2^3 h on the highest vector
    product = (nontwisted(0, 1, 1, 1), nontwisted(0, -1, 2, 1))
    assert apply_product(lm, product, hv) == {lm.hv: from_int(Q, 8)}


def test_eval_action__degree_out_of_range():
    lm = a1_evaluation(2)
    with pytest.raises(DegreeOutOfRange):
        eval_action(lm, nontwisted(0, -1, 0, 3), lm.basis_vector(lm.hv))


def test_eval_action__hbinom():
    lm = a1_evaluation(2, lam=(3,))
    hv = lm.basis_vector(lm.hv)
    assert eval_action(lm, hbinom(0, 2), hv) == {lm.hv: from_int(Q, 3)}


def test_lambda_series__single_factor():
    lm = a1_evaluation(2)
    hv = lm.basis_vector(lm.hv)
    assert lambda_series(lm, hv, 0, 1, 2) == [{0: one(Q)}, {0: from_int(Q, -2)}, {}]
    assert eval_action(lm, lambda_op(0, 1), hv) == {0: from_int(Q, -2)}
    assert eval_action(lm, lambda_op(0, -1), hv) == {0: from_fraction(Q, Fraction(-1, 2))}


def test_lambda_series__tensor_product_multiplies_polynomials():
    lm = loop_tensor(a1_evaluation(2), a1_evaluation(3))
    hv = lm.basis_vector(lm.hv)
    series = lambda_series(lm, hv, 0, 1, 3)
    assert [w.get(lm.hv) for w in series] == [one(Q), from_int(Q, -5), from_int(Q, 6), None]


def test_lambda_series__methods_agree_below_the_characteristic():
    lm = loop_tensor(a1_evaluation(2, F7), a1_evaluation(3, F7))
    hv = lm.basis_vector(lm.hv)
    assert lambda_series(lm, hv, 0, 1, 4, method='newton') == lambda_series(lm, hv, 0, 1, 4, method='product')


def test_lambda_series__newton_needs_invertible_degrees():
    lm = loop_tensor(a1_evaluation(2, F5), a1_evaluation(3, F5))
    hv = lm.basis_vector(lm.hv)
    with pytest.raises(ValueError):
        lambda_series(lm, hv, 0, 1, 5, method='newton')
    auto = lambda_series(lm, hv, 0, 1, 5)
    assert auto == lambda_series(lm, hv, 0, 1, 5, method='product')
    assert [w.get(lm.hv) for w in auto] == [one(F5), None, one(F5), None, None, None]


def test_lambda_series__rejects_unknown_method():
    lm = a1_evaluation(2)
    with pytest.raises(ValueError):
        lambda_series(lm, lm.basis_vector(lm.hv), 0, 1, 2, method='guess')


def test_loop_tensor__divided_power_through_the_coproduct():
    lm = loop_tensor(a1_evaluation(2), a1_evaluation(3))
    assert lm.dimension == 4
    assert lm.k_max == 4
    hv = lm.basis_vector(lm.hv)
    assert eval_action(lm, nontwisted(0, -1, 1, 2), hv) == {lm.pack((1, 1)): from_int(Q, 6)}


def test_loop_tensor__needs_a_factor():
    with pytest.raises(ValueError):
        loop_tensor()


def test_x_series_power__partitions():
    products = list(x_series_power(lambda r: x_series_coefficient(0, 0, 1, r), 2, 4))
    assert products == [
        (nontwisted(0, -1, 1, 1), nontwisted(0, -1, 3, 1)),
        (nontwisted(0, -1, 2, 2),),
    ]


def test_twisted_evaluation_module__extends_the_field():
    tm = twisted_evaluation_module(folding('A2', 'flip'), (1,), 2, F5)
    assert tm.field.canonical() == 'F5^2'
    assert tm.highest_weight == (1,)
    assert tm.dimension == 3


def test_twisted_evaluation_module__keeps_a_field_with_roots():
    tm = twisted_evaluation_module(folding('A3', 'flip'), (1, 0), 2, F7)
    assert tm.field == F7
    assert tm.highest_weight == (1, 0)


def test_restrict__characteristic_equals_order():
    with pytest.raises(CharEqualsOrder):
        twisted_evaluation_module(folding('A3', 'flip'), (1, 0), 1, finite_field(2))


@pytest.mark.parametrize("type_name, lam0", [("A2", (1,)), ("A3", (1, 0)), ("A3", (0, 1))])
@pytest.mark.parametrize("field", [F5, F7])
@pytest.mark.parametrize("a", [2, 3])
@pytest.mark.parametrize("method", ["auto", "product"])
def test_lambda_sigma_series__matches_the_closed_form(type_name, lam0, field, a, method):
    fd = folding(type_name, 'flip')
    tm = twisted_evaluation_module(fd, lam0, a, field)
    hv = tm.basis_vector(tm.hv)
    point = from_int(tm.field, a)
    for node in range(fd.rank0):
        for direction in (1, -1):
            series = lambda_sigma_series(tm, hv, node, direction, 4, method=method)
            for r, w in enumerate(series):
                expected = ev_sigma_lambda(fd, lam0, point, node, r, direction)
                assert w == ({tm.hv: expected} if expected else {})


def test_lambda_sigma_op__reads_the_series():
    fd = folding('A3', 'flip')
    tm = twisted_evaluation_module(fd, (1, 0), 2, F7)
    hv = tm.basis_vector(tm.hv)
    point = from_int(tm.field, 2)
    for r in (1, -1, 2):
        expected = ev_sigma_lambda(fd, (1, 0), point, 0, abs(r), 1 if r > 0 else -1)
        assert apply_twisted(tm, lambda_sigma_op(0, r), hv) == ({tm.hv: expected} if expected else {})
