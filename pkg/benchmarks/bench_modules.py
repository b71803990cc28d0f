import pytest

from hyperloop.coeffring import finite_field, rationals
from hyperloop.hypermod import build_simple_module, build_weyl_module
from hyperloop.rootfold import root_system


@pytest.mark.benchmark(group="weyl")
def test_weyl_module__a2_adjoint(benchmark):
    module = benchmark(build_weyl_module, root_system('A2'), (1, 1), rationals())
    assert module.dimension == 8


@pytest.mark.benchmark(group="weyl")
def test_weyl_module__g2_adjoint(benchmark):
    module = benchmark(build_weyl_module, root_system('G2'), (0, 1), rationals())
    assert module.dimension == 14


@pytest.mark.benchmark(group="simple")
def test_simple_module__a2_adjoint_mod_3(benchmark):
    module = benchmark(build_simple_module, root_system('A2'), (1, 1), finite_field(3))
    assert module.dimension == 7


@pytest.mark.benchmark(group="simple")
def test_simple_module__a1_over_f25(benchmark):
    module = benchmark(build_simple_module, root_system('A1'), (7,), finite_field(5, 2))
    # 7 = 2 + 5: L(2) tensor the Frobenius twist of L(1)
    assert module.dimension == 6
