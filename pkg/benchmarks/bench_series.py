import pytest

from hyperloop.chevalley import structure_constants
from hyperloop.coeffring import finite_field
from hyperloop.hypermod import build_simple_module
from hyperloop.loopaction import evaluation_module, lambda_series, lambda_sigma_series, loop_tensor, twisted_evaluation_module
from hyperloop.rootfold import folding, root_system

F7 = finite_field(7)


def a1_tensor(points):
    rs = root_system('A1')
    cb = structure_constants(rs)
    module = build_simple_module(rs, (1,), F7)
    return loop_tensor(*[evaluation_module(module, a, cb) for a in points])


@pytest.mark.benchmark(group="lambda")
def test_lambda_series__newton(benchmark):
    lm = a1_tensor([2, 3, 4])
    v = lm.basis_vector(lm.hv)
    benchmark(lambda_series, lm, v, 0, 1, 6, 'newton')


@pytest.mark.benchmark(group="lambda")
def test_lambda_series__product(benchmark):
    lm = a1_tensor([2, 3, 4])
    v = lm.basis_vector(lm.hv)
    benchmark(lambda_series, lm, v, 0, 1, 6, 'product')


@pytest.mark.benchmark(group="lambda-sigma")
def test_lambda_sigma_series__a3_flip(benchmark):
    tm = twisted_evaluation_module(folding('A3', 'flip'), (1, 0), 2, F7)
    v = tm.basis_vector(tm.hv)
    benchmark(lambda_sigma_series, tm, v, 0, 1, 4)
