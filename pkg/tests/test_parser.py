from fractions import Fraction

import pytest

from py_jmfree import parser
from py_jmfree.characters import YoungDiagram
from py_jmfree.exceptions import ParseError
from py_jmfree.jm_model import Letter
from py_jmfree.nc_partitions import SetPartition
from py_jmfree.symmetric_core import Permutation


def test_parse_rational_forms():
    assert parser.parse_rational("1/2") == Fraction(1, 2)
    assert parser.parse_rational(" -2 / 4 ") == Fraction(-1, 2)
    assert parser.parse_rational("3") == 3
    assert parser.parse_rational("0.25") == Fraction(1, 4)
    assert parser.parse_rational(Fraction(2, 3)) == Fraction(2, 3)
    for bad in ("1/0", "half", "1/2/3"):
        with pytest.raises(ParseError):
            parser.parse_rational(bad)


def test_parse_grid():
    assert parser.parse_grid("4,9,16") == (4, 9, 16)
    assert parser.parse_grid("[8, 16]") == (8, 16)
    for bad in ("", "4,-1", "4,x", "0"):
        with pytest.raises(ParseError):
            parser.parse_grid(bad)


def test_parse_diagram():
    assert parser.parse_diagram("3,2,1") == YoungDiagram((3, 2, 1))
    assert parser.parse_diagram("[2, 2]") == YoungDiagram((2, 2))
    assert parser.parse_diagram("") == YoungDiagram(())
    assert parser.parse_diagram("4,1").rows == (4, 1)
    for bad in ("1,2", "3,a", "[3,", "{}"):
        with pytest.raises(ParseError):
            parser.parse_diagram(bad)


def test_parse_permutation_cycle_notation():
    p = parser.parse_permutation("(1 2)(3 4)")
    assert p.degree == 4
    assert p == Permutation((2, 1, 4, 3))
    assert parser.parse_permutation("(1,2,3)", degree=5) == Permutation((2, 3, 1, 4, 5))
    assert parser.parse_permutation("()", degree=3) == Permutation.identity(3)
    assert parser.parse_permutation("e") == Permutation.identity(1)
    assert str(p) == "(1 2)(3 4)"


def test_parse_permutation_one_line():
    assert parser.parse_permutation("[2,1,3]") == Permutation((2, 1, 3))
    with pytest.raises(ParseError):
        parser.parse_permutation("[2,1,3]", degree=4)


@pytest.mark.parametrize("bad", ["(1 2)(2 3)", "[1,1]", "(1 x)", "1 2", "(1 5)"])
def test_parse_permutation_rejects(bad):
    with pytest.raises(ParseError):
        parser.parse_permutation(bad, degree=4 if bad == "(1 5)" else None)


def test_parse_partition():
    p = parser.parse_partition("[[3,4],[1,2]]")
    assert p == SetPartition.from_blocks([[1, 2], [3, 4]])
    assert p.to_lists() == [[1, 2], [3, 4]]
    for bad in ("[[1,2],[2]]", "[1,2]", "nope", "[[1,\"a\"]]"):
        with pytest.raises(ParseError):
            parser.parse_partition(bad)


def test_parse_word():
    assert parser.parse_word("PX x p") == (Letter.PX, Letter.X, Letter.P)
    assert parser.parse_word("px·x") == (Letter.PX, Letter.X)
    assert parser.parse_word("PX*X") == (Letter.PX, Letter.X)
    assert parser.format_word((Letter.PX, Letter.X)) == "PX X"
    for bad in ("", "PX Y"):
        with pytest.raises(ParseError):
            parser.parse_word(bad)


def test_parse_shape_and_ab_word():
    assert parser.parse_shape("pa a pa a") == ("pa", "a", "pa", "a")
    assert parser.parse_shape("PX X") == ("pa", "a")
    assert parser.parse_ab_word("abab") == ("a", "b", "a", "b")
    assert parser.parse_ab_word("a B") == ("a", "b")
    for bad in ("", "pb"):
        with pytest.raises(ParseError):
            parser.parse_shape(bad)
    with pytest.raises(ParseError):
        parser.parse_ab_word("abc")


def test_parse_family_from_text_and_mapping():
    text = '{"name": "mine", "balance": "3/2", "diagrams": {"4": [2, 2], "6": [3, 2, 1]}}'
    family = parser.parse_family(text)
    assert family.name == "mine"
    assert family.balance == Fraction(3, 2)
    assert family.diagram(6) == YoungDiagram((3, 2, 1))
    same = parser.parse_family({"name": "mine", "balance": 2, "diagrams": {4: [2, 2]}})
    assert same.diagram(4) == YoungDiagram((2, 2))


@pytest.mark.parametrize("bad", [
    "[]",
    '{"name": "x", "diagrams": {}}',
    '{"name": "x", "balance": 1, "diagrams": {"4": [3, 2]}}',
    '{"name": "x", "balance": 1, "diagrams": {"four": [2, 2]}}',
    '{"name": "x", "balance": 1, "diagrams": [[2, 2]]}',
    "not json",
])
def test_parse_family_rejects(bad):
    with pytest.raises(ParseError):
        parser.parse_family(bad)
