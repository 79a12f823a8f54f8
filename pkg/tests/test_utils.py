"""
Tests for rational parsing, formatting and JSON cleaning.
"""

from fractions import Fraction

import pytest

from src.errors import DegreeParseError
from src.utils import (
    clean_for_json,
    format_degree,
    format_duration,
    format_members,
    parse_degree,
    parse_rational,
)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1/2", Fraction(1, 2)),
        ("2/4", Fraction(1, 2)),
        (" 3 / 8 ", Fraction(3, 8)),
        ("0", Fraction(0)),
        ("1", Fraction(1)),
        (1, Fraction(1)),
        (Fraction(2, 3), Fraction(2, 3)),
    ],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["0.5", "1/0", "-1/2", "a/b", "", "1/2/3", None, True])
def test_parse_rational_rejects(text):
    with pytest.raises(DegreeParseError):
        parse_rational(text)


def test_parse_degree_range():
    assert parse_degree("1") == 1
    with pytest.raises(DegreeParseError):
        parse_degree("3/2")


def test_format_degree():
    assert format_degree(Fraction(2, 4)) == "1/2"
    assert format_degree(Fraction(0)) == "0"
    assert format_degree(Fraction(1)) == "1"
    assert parse_rational(format_degree(Fraction(7, 64))) == Fraction(7, 64)


def test_format_members():
    assert format_members((0, 2)) == "0 2"
    assert format_members(()) == ""


def test_clean_for_json():
    """Fractions become strings; tuples and sets become lists."""
    data = {"x": Fraction(1, 3), "pair": (1, 2), "set": frozenset({2, 1}), 3: None}
    assert clean_for_json(data) == {"x": "1/3", "pair": [1, 2], "set": [1, 2], "3": None}


def test_format_duration():
    assert format_duration(0.25) == "250 ms"
    assert format_duration(2.5) == "2.50 s"
    assert format_duration(125) == "2 min 5 s"
