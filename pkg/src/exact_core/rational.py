"""
rational.py

Exact rational helpers shared by every package.
Rationals are plain fractions.Fraction values (always reduced, positive
denominator); this module adds parsing/formatting and the INFINITY sentinel
used for infinite slopes and framings.
"""

import logging
from fractions import Fraction
from typing import Union

logger = logging.getLogger(__name__)

Rational = Fraction


class ExactArithmeticError(Exception):
    """Raised when an exact-arithmetic operation is called outside its domain."""
    pass


class _Infinity:
    """Singleton for the slope / framing 1/0."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Slope = Union[Fraction, _Infinity]


def is_infinite(value) -> bool:
    return value is INFINITY


def to_rational(value) -> Fraction:
    """
    Convert an int, Fraction or "a/b" string to an exact Fraction.

    Floats are rejected: they cannot be certified exact.
    """
    if isinstance(value, bool):
        raise ExactArithmeticError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ExactArithmeticError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse "a/b" or "a" (surrounding whitespace ignored)."""
    cleaned = text.strip()
    if "." in cleaned or "e" in cleaned.lower():
        raise ExactArithmeticError(f"decimal notation is not exact: {text!r}")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise ExactArithmeticError(f"invalid rational {text!r}") from exc


def parse_slope(text: str) -> Slope:
    if text.strip().lower() in ("inf", "infinity", "1/0"):
        return INFINITY
    return parse_rational(text)


def format_rational(value: Slope) -> str:
    """Render as "a/b" ("a" when integral, "inf" for INFINITY)."""
    if value is INFINITY:
        return "inf"
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def slope_from_pair(numerator: int, denominator: int) -> Slope:
    """numerator/denominator, with denominator 0 meaning INFINITY."""
    if denominator == 0:
        if numerator == 0:
            raise ExactArithmeticError("0/0 is not a slope")
        return INFINITY
    return Fraction(numerator, denominator)


def slope_to_pair(value: Slope) -> tuple:
    """Inverse of slope_from_pair: (p, q) with q >= 0 and gcd 1."""
    if value is INFINITY:
        return (1, 0)
    value = to_rational(value)
    return (value.numerator, value.denominator)
