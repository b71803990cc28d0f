import pytest

from hyperloop.ncr import ncr, multinomial, compositions, factorial


def test_ncr__pascal():
    for n in range(-4, 8):
        for r in range(1, 6):
            assert ncr(n + 1, r) == ncr(n, r) + ncr(n, r - 1)


def test_ncr__negative_r_is_zero():
    assert ncr(5, -1) == 0
    assert ncr(-3, -2) == 0


def test_ncr__negative_n():
    # (1 - u)^(-1) = 1 + u + u^2 + ...
    assert [(-1) ** r * ncr(-1, r) for r in range(5)] == [1, 1, 1, 1, 1]
    assert ncr(-3, 2) == 6


def test_multinomial__matches_factorials():
    assert multinomial([3, 2]) == ncr(5, 2)
    assert multinomial([1, 1, 1]) == factorial(3)


@pytest.mark.parametrize("total,parts", [(0, 1), (3, 2), (4, 3)])
def test_compositions__count(total, parts):
    found = list(compositions(total, parts))
    assert len(found) == ncr(total + parts - 1, parts - 1)
    assert all(sum(c) == total and len(c) == parts for c in found)
    assert len(set(found)) == len(found)
