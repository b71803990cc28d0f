"""
Text grammars of the command line and of the case grid.

Fields: ``Q``, ``Fp``, ``Fp^k``, or ``Fq`` for a prime power q.
Weights: comma-separated integers, ``1,0,2``.
l-weights: comma-separated items, each ``wI@A`` (the fundamental l-weight of
node I at the point A) or ``I:(POLY)`` with POLY a polynomial in u with
integer coefficients and constant term 1. Nodes count from 1.
"""

from typing import List, Sequence, Tuple, Union
import logging
import re

import sympy

from .coeffring import RingSpec, Scalar, finite_field, from_int, one, rationals
from .exception import ParseError
from .lweights import LWeight, fundamental, from_polynomials, multiply, one_lweight
from .rootfold import FoldingDatum, RootSystem, Weight

logger = logging.getLogger(__name__)

_FIELD = re.compile(r'^F(?P<q>\d+)(\^(?P<k>\d+))?$')
_FUNDAMENTAL = re.compile(r'^w(?P<node>\d+)@(?P<point>-?\d+)$')
_POLYNOMIAL = re.compile(r'^(?P<node>\d+):\((?P<poly>[^()]*)\)$')
_TERM = re.compile(r'([+-])?\s*(\d*)\s*(u(\^(\d+))?)?')


def parse_field(text: str) -> RingSpec:
    """
    >>> parse_field('Q').canonical()
    'Q'
    >>> parse_field('F25') == parse_field('F5^2')
    True
    """
    text = text.strip()
    if text == 'Q':
        return rationals()

    match = _FIELD.match(text)
    if not match:
        raise ParseError(f'{text!r} is not a field; expected Q, Fp, Fp^k or Fq')

    q = int(match.group('q'))
    if match.group('k') is not None:
        if not sympy.isprime(q):
            raise ParseError(f'{q} is not a prime')
        return finite_field(q, int(match.group('k')))

    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise ParseError(f'{q} is not a prime power')
    ((p, k),) = factors.items()
    return finite_field(int(p), int(k))


def parse_weight(text: str) -> Weight:
    """
    >>> parse_weight('1,0,2')
    (1, 0, 2)
    """
    try:
        return tuple(int(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise ParseError(f'{text!r} is not a comma-separated list of integers') from None


def parse_polynomial(text: str, field: RingSpec) -> List[Scalar]:
    """
    Ascending coefficients of a polynomial in u.

    >>> [c.canonical() for c in parse_polynomial('1-3u+2u^2', parse_field('Q'))]
    ['1', '-3', '2']
    """
    source = text.replace(' ', '')
    if not source:
        raise ParseError('empty polynomial')

    coeffs: List[int] = []
    pos = 0
    while pos < len(source):
        match = _TERM.match(source, pos)
        if not match or match.end() == pos:
            raise ParseError(f'cannot read {source[pos:]!r} in {text!r}')
        sign, digits, variable, _, power = match.groups()
        if pos > 0 and sign is None:
            raise ParseError(f'missing sign before {source[pos:]!r} in {text!r}')
        if not digits and not variable:
            raise ParseError(f'dangling sign in {text!r}')

        value = int(digits) if digits else 1
        if sign == '-':
            value = -value
        degree = 0 if not variable else int(power) if power else 1

        while len(coeffs) <= degree:
            coeffs.append(0)
        coeffs[degree] += value
        pos = match.end()

    return [from_int(field, c) for c in coeffs]


def _split_items(text: str) -> List[str]:
    items, depth, current = [], 0, ''
    for ch in text:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        if ch == ',' and depth == 0:
            items.append(current.strip())
            current = ''
        else:
            current += ch
    if current.strip():
        items.append(current.strip())
    return items


def parse_lweight(text: str, context: Union[RootSystem, FoldingDatum], field: RingSpec) -> LWeight:
    rank = context.rank0 if isinstance(context, FoldingDatum) else context.rank
    out = one_lweight(context, field)
    if text.strip() in ('', '1'):
        return out

    for item in _split_items(text):
        node, factor = _parse_item(item, context, field, rank)
        logger.debug('l-weight item %r at node %s', item, node)
        out = multiply(out, factor)
    return out


def _node(text: str, item: str, rank: int) -> int:
    node = int(text)
    if not 1 <= node <= rank:
        raise ParseError(f'node {node} of {item!r} is outside 1..{rank}')
    return node - 1


def _parse_item(item: str, context: Union[RootSystem, FoldingDatum], field: RingSpec, rank: int) -> Tuple[int, LWeight]:
    match = _FUNDAMENTAL.match(item)
    if match:
        node = _node(match.group('node'), item, rank)
        point = from_int(field, int(match.group('point')))
        if point.is_zero():
            raise ParseError(f'the point of {item!r} is zero in {field.canonical()}')
        return node, fundamental(context, node, point)

    match = _POLYNOMIAL.match(item)
    if match:
        node = _node(match.group('node'), item, rank)
        poly = parse_polynomial(match.group('poly'), field)
        if not poly[0].is_one():
            raise ParseError(f'{item!r} does not have constant term 1')
        polys: List[Sequence[Scalar]] = [[one(field)] for _ in range(rank)]
        polys[node] = poly
        return node, from_polynomials(context, polys, field)

    raise ParseError(f'{item!r} is neither wI@A nor I:(POLY)')
