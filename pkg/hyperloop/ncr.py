import operator as op
from functools import reduce
from typing import Iterable, Iterator, Tuple


def ncr(n: int, r: int) -> int:
    """
    The binomial coefficient n(n-1)...(n-r+1)/r!, for any integer n.

    >>> ncr(5, 2)
    10
    >>> ncr(2, 3)
    0
    >>> ncr(-1, 3)
    -1
    >>> ncr(-2, 2)
    3
    """
    if r < 0:
        return 0

    if n >= 0:
        if r > n:
            return 0
        r = min(r, n - r)

    numer = reduce(op.mul, range(n, n - r, -1), 1)
    denom = reduce(op.mul, range(1, r + 1), 1)
    return numer // denom


def mult(it: Iterable[int]) -> int:
    return reduce(op.mul, it, 1)


def factorial(n: int) -> int:
    return mult(range(1, n + 1))


def multinomial(parts: Iterable[int]) -> int:
    """
    >>> multinomial([2, 1, 1])
    12
    """
    parts = list(parts)
    return factorial(sum(parts)) // mult(factorial(p) for p in parts)


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """
    Every tuple of `parts` nonnegative integers summing to `total`, in
    lexicographic order.

    >>> list(compositions(2, 2))
    [(0, 2), (1, 1), (2, 0)]
    >>> list(compositions(0, 0))
    [()]
    >>> list(compositions(1, 0))
    []
    """
    if parts == 0:
        if total == 0:
            yield ()
        return

    if parts == 1:
        yield (total,)
        return

    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def partitions_into(total: int, count: int, smallest: int = 1) -> Iterator[Tuple[int, ...]]:
    """
    Nondecreasing tuples of `count` integers, each at least `smallest`,
    summing to `total`.

    >>> list(partitions_into(4, 2))
    [(1, 3), (2, 2)]
    >>> list(partitions_into(0, 0))
    [()]
    """
    if count == 0:
        if total == 0:
            yield ()
        return

    for first in range(smallest, total // count + 1):
        for rest in partitions_into(total - first, count - 1, first):
            yield (first,) + rest
