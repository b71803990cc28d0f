"""
The enveloping algebra of the Heisenberg algebra [x, y] = z, z central,
in the ordered basis x^a y^b z^c with rational coefficients.
"""

from fractions import Fraction
from typing import Dict, Tuple
import logging
import time

from ..ncr import factorial, ncr
from .report import CaseReport, VerificationReport

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int, int]
Element = Dict[Monomial, Fraction]

X: Element = {(1, 0, 0): Fraction(1)}
Y: Element = {(0, 1, 0): Fraction(1)}
Z: Element = {(0, 0, 1): Fraction(1)}
ONE: Element = {(0, 0, 0): Fraction(1)}


def _accumulate(out: Element, key: Monomial, c: Fraction) -> None:
    total = out.get(key, Fraction(0)) + c
    if total:
        out[key] = total
    else:
        out.pop(key, None)


def add(first: Element, second: Element, c: Fraction = Fraction(1)) -> Element:
    out = dict(first)
    for key, value in second.items():
        _accumulate(out, key, c * value)
    return out


def scale(element: Element, c: Fraction) -> Element:
    return {key: c * value for key, value in element.items()} if c else {}


def _monomial_product(left: Monomial, right: Monomial) -> Element:
    """
    x^a y^b z^c . x^d y^e z^f, moving y^b past x^d with
    y^b x^d = sum_j j! C(b, j) C(d, j) (-z)^j x^(d-j) y^(b-j).

    >>> _monomial_product((0, 1, 0), (1, 0, 0)) == {(1, 1, 0): 1, (0, 0, 1): -1}
    True
    """
    a, b, c = left
    d, e, f = right
    out: Element = {}
    for j in range(min(b, d) + 1):
        coeff = Fraction(factorial(j) * ncr(b, j) * ncr(d, j) * (-1) ** j)
        _accumulate(out, (a + d - j, b - j + e, c + f + j), coeff)
    return out


def multiply(first: Element, second: Element) -> Element:
    out: Element = {}
    for left, c1 in first.items():
        for right, c2 in second.items():
            for key, c in _monomial_product(left, right).items():
                _accumulate(out, key, c1 * c2 * c)
    return out


def power(element: Element, n: int) -> Element:
    out = dict(ONE)
    for _ in range(n):
        out = multiply(out, element)
    return out


def divided_power(element: Element, n: int) -> Element:
    return scale(power(element, n), Fraction(1, factorial(n)))


def expansion(n: int) -> Element:
    """sum over k = n mod 2 of (-z/2)^((n-k)/2) sum_r x^(r) y^(k-r)."""
    out: Element = {}
    half_z = scale(Z, Fraction(-1, 2))
    for k in range(n % 2, n + 1, 2):
        central = divided_power(half_z, (n - k) // 2)
        inner: Element = {}
        for r in range(k + 1):
            inner = add(inner, multiply(divided_power(X, r), divided_power(Y, k - r)))
        out = add(out, multiply(central, inner))
    return out


def _witness(element: Element) -> Dict[str, str]:
    return {f'x^{a} y^{b} z^{c}': str(v) for (a, b, c), v in sorted(element.items())}


def check_heisenberg_identity(n_max: int) -> VerificationReport:
    if n_max < 1:
        raise ValueError('n_max must be at least 1')

    report = VerificationReport(suite='heisenberg')
    x_plus_y = add(X, Y)
    for n in range(1, n_max + 1):
        start = time.perf_counter()
        case = CaseReport(case={"n": n})
        difference = add(divided_power(x_plus_y, n), expansion(n), Fraction(-1))
        case.record('divided power of x + y', not difference, _witness(difference))
        case.elapsed_ms = (time.perf_counter() - start) * 1000
        report.cases.append(case)

    logger.info('heisenberg identity through n = %s: %s', n_max, 'pass' if report.ok() else 'fail')
    return report
