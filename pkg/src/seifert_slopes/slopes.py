"""
slopes.py

Slope calculus on the boundary tori of the three singular-fiber
neighbourhoods of M(-1/p, n/(pn+1), 1/(p(n+1)+1)).

Tori are identified with R^2/Z^2; the slope of a vector (x, y) is y/x, with
x = 0 giving INFINITY. All slopes are derived from the gluing matrices A_i:
    vertical slope  v_i = slope(A_i^-1 (0, 1))
    critical slope  c_i = slope(A_i (1, 0))
    boundary slope  b_i = slope(A_i (m_i, 1))   for twisting number m_i
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from src.exact_core.int_matrix import IntMatrix, determinant
from src.exact_core.rational import Slope, slope_from_pair

logger = logging.getLogger(__name__)


class SlopeError(Exception):
    """Raised when slope-calculus parameters are out of range."""
    pass


def check_parameters(p: int, n: int) -> None:
    if isinstance(p, bool) or isinstance(n, bool) or not isinstance(p, int) or not isinstance(n, int):
        raise SlopeError("p and n must be integers")
    if p < 2 or n < 1:
        raise SlopeError(f"need p >= 2 and n >= 1, got p={p}, n={n}")


@dataclass(frozen=True)
class SeifertTriple:
    a: Fraction
    b: Fraction
    c: Fraction

    def surgery_coefficients(self) -> Tuple[Fraction, Fraction, Fraction]:
        """Leg coefficients -1/a, -1/b, -1/c of the surgery diagram."""
        return tuple(-1 / x for x in (self.a, self.b, self.c))


def seifert_triple(p: int, n: int) -> SeifertTriple:
    check_parameters(p, n)
    return SeifertTriple(Fraction(-1, p), Fraction(n, p * n + 1), Fraction(1, p * (n + 1) + 1))


@dataclass(frozen=True)
class TwistState:
    """Twisting numbers of the three Legendrian singular fibers."""

    m1: int
    m2: int
    m3: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.m1, self.m2, self.m3)


NORMALIZED_TWIST_STATE = TwistState(0, -1, -1)


def gluing_matrices(p: int, n: int) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    The gluing matrices A_1, A_2, A_3 of the three solid tori.

    Each has determinant 1, and the ratio of its first-column entries is the
    corresponding leg coefficient of the surgery diagram.
    """
    check_parameters(p, n)
    a1 = IntMatrix([[p, -1], [1, 0]])
    a2 = IntMatrix([[p * n + 1, p * n - p + 1], [-n, 1 - n]])
    a3 = IntMatrix([[p * (n + 1) + 1, 1], [-1, 0]])
    legs = seifert_triple(p, n).surgery_coefficients()
    for index, (matrix, leg) in enumerate(zip((a1, a2, a3), legs), start=1):
        if determinant(matrix) != 1:
            raise SlopeError(f"A_{index} has determinant {determinant(matrix)}")
        if first_column_ratio(matrix) != leg:
            raise SlopeError(f"A_{index} does not reproduce the leg coefficient {leg}")
    return a1, a2, a3


def _apply(matrix: IntMatrix, x: int, y: int) -> Tuple[int, int]:
    return (matrix[0, 0] * x + matrix[0, 1] * y, matrix[1, 0] * x + matrix[1, 1] * y)


def _inverse_unimodular(matrix: IntMatrix) -> IntMatrix:
    return IntMatrix([[matrix[1, 1], -matrix[0, 1]], [-matrix[1, 0], matrix[0, 0]]])


def vector_slope(x: int, y: int) -> Slope:
    return slope_from_pair(y, x)


def first_column_ratio(matrix: IntMatrix) -> Slope:
    return slope_from_pair(matrix[0, 0], matrix[1, 0])


def vertical_slopes(p: int, n: int) -> Tuple[Slope, Slope, Slope]:
    return tuple(vector_slope(*_apply(_inverse_unimodular(a), 0, 1)) for a in gluing_matrices(p, n))


def critical_slopes(p: int, n: int) -> Tuple[Slope, Slope, Slope]:
    return tuple(vector_slope(*_apply(a, 1, 0)) for a in gluing_matrices(p, n))


def slopes(p: int, n: int) -> Tuple[Slope, ...]:
    """
    Vertical and critical slopes (v1, v2, v3, c1, c2, c3).

    v = (p, -(pn+1)/(pn-p+1), -(p(n+1)+1)),
    c = (1/p, -n/(pn+1), -1/(p(n+1)+1)).
    """
    check_parameters(p, n)
    return vertical_slopes(p, n) + critical_slopes(p, n)


def boundary_slopes(p: int, n: int, state: TwistState) -> Tuple[Slope, Slope, Slope]:
    """
    Boundary slopes (b1, b2, b3) of standard neighbourhoods with twisting
    numbers (m1, m2, m3). A vanishing denominator yields INFINITY.
    """
    matrices = gluing_matrices(p, n)
    return tuple(vector_slope(*_apply(a, m, 1)) for a, m in zip(matrices, state.as_tuple()))


def is_critical_slope(index: int, slope: Slope, p: int, n: int) -> bool:
    """Whether `slope` is the critical slope of singular fiber `index` (1-based)."""
    if index not in (1, 2, 3):
        raise SlopeError(f"singular fiber index must be 1, 2 or 3, got {index}")
    return critical_slopes(p, n)[index - 1] == slope


def twist_thresholds(p: int, n: int) -> Tuple[Fraction, Fraction, Fraction]:
    """A bypass raises m_i to m_i + 1 while m_i + 1 <= threshold_i."""
    check_parameters(p, n)
    return (
        Fraction(1, p),
        Fraction(-(p * n - p + 1), p * n + 1),
        Fraction(-1, p * (n + 1) + 1),
    )


def twist_number_bounds(p: int, n: int) -> TwistState:
    """Largest twisting numbers reachable by bypass attachments: floor(threshold_i)."""
    t1, t2, t3 = twist_thresholds(p, n)
    return TwistState(math.floor(t1), math.floor(t2), math.floor(t3))
