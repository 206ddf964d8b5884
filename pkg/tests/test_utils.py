from fractions import Fraction

import pytest

from py_jmfree import utils


def test_falling_factorial():
    assert utils.falling_factorial(5, 0) == 1
    assert utils.falling_factorial(5, 2) == 20
    assert utils.falling_factorial(3, 4) == 0
    assert utils.falling_factorial(0, 1) == 0
    with pytest.raises(ValueError):
        utils.falling_factorial(3, -1)


def test_catalan_numbers():
    assert [utils.catalan(m) for m in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_format_rational():
    assert utils.format_rational(Fraction(3, 7)) == "3/7"
    assert utils.format_rational(Fraction(6, 3)) == "2"
    assert utils.format_rational(-4) == "-4"


def test_format_float_keeps_twelve_digits():
    assert utils.format_float(1 / 3) == 0.333333333333
    assert utils.format_float(2.0) == 2.0


def test_cyclic_pairs_wrap_around():
    assert list(utils.cyclic_pairs(3)) == [(1, 2), (2, 3), (3, 1)]
    assert list(utils.cyclic_pairs(1)) == [(1, 1)]


def test_rotate_left():
    assert utils.rotate_left([1, 2, 3, 4], 1) == [2, 3, 4, 1]
    assert utils.rotate_left([1, 2, 3], 5) == [3, 1, 2]
    assert utils.rotate_left([], 2) == []


def test_is_strictly_shrinking():
    assert utils.is_strictly_shrinking([0.3, 0.2, 0.1])
    assert not utils.is_strictly_shrinking([0.3, 0.3])
    assert not utils.is_strictly_shrinking([0.1, 0.2])
    assert utils.is_strictly_shrinking([0.0, 0.0, 0.0])
    assert utils.is_strictly_shrinking([0.2, 0.0, 0.0])
    assert not utils.is_strictly_shrinking([0.0, 0.1])
