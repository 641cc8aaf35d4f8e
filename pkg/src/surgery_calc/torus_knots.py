"""
torus_knots.py

Torus-knot data used by the L-space surgery criterion: slice genus and the
"r >= 2g - 1" test for surgeries on positive torus knots.
"""

import logging
import math

from src.exact_core.rational import to_rational
from src.surgery_calc.framed_link import FramedLink, SurgeryError

logger = logging.getLogger(__name__)


def slice_genus_torus_knot(p: int, q: int) -> int:
    """(p - 1)(q - 1) / 2 for coprime p, q >= 2."""
    if p < 2 or q < 2:
        raise SurgeryError(f"torus knot parameters must be >= 2, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise SurgeryError(f"T({p},{q}) is not a knot: parameters share a factor")
    return (p - 1) * (q - 1) // 2


def is_lspace_surgery(p: int, q: int, r, strict: bool = False) -> bool:
    """
    Whether S^3_r(T(p, q)) is an L-space.

    Uses r >= 2g - 1 (r > 2g - 1 when `strict`), g the slice genus of T(p, q).
    """
    r = to_rational(r)
    bound = 2 * slice_genus_torus_knot(p, q) - 1
    return r > bound if strict else r >= bound


def knot_surgery_presentation(r, label: str = "K") -> FramedLink:
    """Single-component presentation of S^3_r(K); only its linking data is recorded."""
    return FramedLink.unknot(r, label=label)
