"""
continued_fractions.py

Negative continued fractions a1 - 1/(a2 - 1/(... - 1/ak)) and the integral
chains used to replace a rationally framed unknot by integrally framed ones
(slam-dunk in reverse).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from src.exact_core.rational import ExactArithmeticError, to_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NegCF:
    """Coefficients [a1, ..., ak], every entry <= -2."""

    coefficients: Tuple[int, ...]

    def value(self) -> Fraction:
        return evaluate_continued_fraction(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)


def evaluate_continued_fraction(coefficients: Sequence[int]) -> Fraction:
    """Exact value of a1 - 1/(a2 - 1/(... - 1/ak))."""
    if not coefficients:
        raise ExactArithmeticError("empty continued fraction")
    value = Fraction(coefficients[-1])
    for a in reversed(coefficients[:-1]):
        if value == 0:
            raise ExactArithmeticError(f"continued fraction {list(coefficients)} has a zero tail")
        value = a - 1 / value
    return value


def _expand(r: Fraction) -> List[int]:
    coefficients = []
    while True:
        a = math.floor(r)
        coefficients.append(a)
        if r == a:
            return coefficients
        r = 1 / (a - r)


def neg_continued_fraction(r) -> NegCF:
    """
    Expand r < -1 as a negative continued fraction with all entries <= -2.

    Parameters
    ----------
    r : Fraction, int or "a/b" string
        Rational strictly less than -1.

    Returns
    -------
    NegCF
        The unique expansion; NegCF.value() == r exactly.
    """
    r = to_rational(r)
    if r >= -1:
        raise ExactArithmeticError(f"negative continued fraction needs r < -1, got {r}")
    coefficients = tuple(_expand(r))
    if any(a > -2 for a in coefficients):
        raise ExactArithmeticError(f"expansion of {r} left the canonical domain: {coefficients}")
    return NegCF(coefficients)


def integral_chain(r) -> List[int]:
    """
    Integer chain [a1, ..., ak] evaluating to r.

    Sign-definite when possible: all entries <= -2 for r < -1, all >= 2 for
    r > 1. For -1 <= r <= 1 the first entry is floor(r) and the tail is the
    negative expansion of 1/(floor(r) - r), which is < -1.
    """
    r = to_rational(r)
    if r.denominator == 1:
        return [r.numerator]
    if r < -1:
        return list(neg_continued_fraction(r).coefficients)
    if r > 1:
        return [-a for a in neg_continued_fraction(-r).coefficients]
    head = math.floor(r)
    return [head] + list(neg_continued_fraction(1 / (head - r)).coefficients)
