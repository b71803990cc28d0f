import pytest

from hyperloop.coeffring import finite_field, from_int, rationals
from hyperloop.exception import NotSplit, ParseError
from hyperloop.lweights import fundamental, multiply, one_lweight
from hyperloop.parse import parse_field, parse_weight, parse_polynomial, parse_lweight
from hyperloop.rootfold import folding, root_system

F5 = finite_field(5)
F7 = finite_field(7)


def test_parse_field():
    assert parse_field('Q') == rationals()
    assert parse_field('F7') == F7
    assert parse_field('F5^2') == finite_field(5, 2)
    assert parse_field(' F25 ') == finite_field(5, 2)


@pytest.mark.parametrize("text", ['F6', 'F4^2', 'R', 'F', 'Q5'])
def test_parse_field__rejects(text):
    with pytest.raises(ParseError):
        parse_field(text)


def test_parse_weight():
    assert parse_weight('1, 0,2') == (1, 0, 2)
    with pytest.raises(ParseError):
        parse_weight('1,a')


def test_parse_polynomial():
    assert [c.canonical() for c in parse_polynomial('1-2u', F7)] == ['1', '5']
    assert [c.canonical() for c in parse_polynomial('1 + u^2', rationals())] == ['1', '0', '1']
    assert [c.canonical() for c in parse_polynomial('u^2+1-u', rationals())] == ['1', '-1', '1']


@pytest.mark.parametrize("text", ['', 'uu', '1+', '1+x'])
def test_parse_polynomial__rejects(text):
    with pytest.raises(ParseError):
        parse_polynomial(text, rationals())


def test_parse_lweight__fundamental():
    fd = folding('A2', 'flip')
    assert parse_lweight('w1@2', fd, F5) == fundamental(fd, 0, from_int(F5, 2))


def test_parse_lweight__one():
    fd = folding('A3', 'flip')
    assert parse_lweight('', fd, F7) == one_lweight(fd, F7)
    assert parse_lweight('1', fd, F7).is_one()


def test_parse_lweight__polynomial_item():
    fd = folding('A3', 'flip')
    assert parse_lweight('1:(1-2u)', fd, F7) == fundamental(fd, 0, from_int(F7, 2))


def test_parse_lweight__product():
    rs = root_system('A2')
    expected = multiply(fundamental(rs, 0, from_int(F5, 2)), fundamental(rs, 1, from_int(F5, 3)))
    assert parse_lweight('w1@2, w2@3', rs, F5) == expected


def test_parse_lweight__node_out_of_range():
    with pytest.raises(ParseError):
        parse_lweight('w3@2', folding('A3', 'flip'), F7)


def test_parse_lweight__zero_point():
    with pytest.raises(ParseError):
        parse_lweight('w1@5', folding('A2', 'flip'), F5)


def test_parse_lweight__constant_term():
    with pytest.raises(ParseError):
        parse_lweight('1:(2-u)', folding('A2', 'flip'), F5)


def test_parse_lweight__not_split():
    with pytest.raises(NotSplit) as info:
        parse_lweight('1:(1+u^2)', folding('A3', 'flip'), F7)
    assert info.value.suggested_degree == 2
