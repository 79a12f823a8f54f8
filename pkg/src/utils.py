"""
Utility functions and helpers for the pfg toolkit.

Rational parsing and formatting for user-facing I/O, plus JSON cleaning and
duration formatting shared by the CLI and the report writers.
"""

import logging
import re
from fractions import Fraction
from typing import Any, Iterable

from src.errors import DegreeParseError

logger = logging.getLogger("pfg.utils")

_RATIONAL = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """
    Parse a non-negative rational written as ``"p/q"`` or ``"p"``.

    Decimal notation is rejected so no precision is silently lost.

    Args:
        text (str | int | Fraction): Value to parse. Integers and Fractions
            pass through unchanged.

    Returns:
        Fraction: The value in lowest terms.

    Raises:
        DegreeParseError: On malformed input or a zero denominator.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise DegreeParseError(f"Expected a rational string 'p/q', got {text!r}")
    match = _RATIONAL.match(text)
    if not match:
        raise DegreeParseError(f"Malformed rational {text!r}; use 'p/q' or 'p'")
    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
        raise DegreeParseError(f"Zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def parse_degree(text: str | int | Fraction) -> Fraction:
    """Parse a rational and require it to lie in ``[0, 1]``."""
    value = parse_rational(text)
    if not 0 <= value <= 1:
        raise DegreeParseError(f"Degree {text!r} is outside [0, 1]")
    return value


def format_degree(value: Fraction) -> str:
    """Format a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_members(members: Iterable[int]) -> str:
    return " ".join(str(m) for m in members)


def clean_for_json(data: Any) -> Any:
    """
    Make nested data JSON serializable: Fractions become ``"p/q"`` strings,
    tuples and sets become lists.
    """
    if isinstance(data, dict):
        return {str(k): clean_for_json(v) for k, v in data.items()}
    elif isinstance(data, (list, tuple)):
        return [clean_for_json(item) for item in data]
    elif isinstance(data, (set, frozenset)):
        return [clean_for_json(item) for item in sorted(data)]
    elif isinstance(data, Fraction):
        return format_degree(data)
    else:
        return data


def format_duration(seconds: float) -> str:
    """
    Format a duration in seconds to a human-readable string.

    Args:
        seconds: Duration in seconds

    Returns:
        Human-readable duration string
    """
    if seconds < 1:
        return f"{seconds * 1000:.0f} ms"
    elif seconds < 60:
        return f"{seconds:.2f} s"
    else:
        minutes = int(seconds // 60)
        return f"{minutes} min {seconds - 60 * minutes:.0f} s"
