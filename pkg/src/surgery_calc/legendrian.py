"""
legendrian.py

Front-diagram invariants of Legendrian knots and the smooth framing of a
contact surgery along them.
"""

from dataclasses import dataclass
from typing import Tuple

from src.exact_core.rational import to_rational
from src.surgery_calc.framed_link import SurgeryError


@dataclass(frozen=True)
class LegendrianData:
    """Writhe and cusp counts of a closed front projection."""

    writhe: int
    up_cusps: int
    down_cusps: int

    def __post_init__(self):
        if self.up_cusps < 0 or self.down_cusps < 0:
            raise SurgeryError("cusp counts must be nonnegative")
        if (self.up_cusps + self.down_cusps) % 2:
            raise SurgeryError("a closed front has an even number of cusps")
        if self.up_cusps + self.down_cusps < 2:
            raise SurgeryError("a closed front has at least two cusps")


def legendrian_invariants(data: LegendrianData) -> Tuple[int, int]:
    """(tb, rot) = (writhe - cusps/2, (down - up)/2)."""
    cusps = data.up_cusps + data.down_cusps
    tb = data.writhe - cusps // 2
    rot = (data.down_cusps - data.up_cusps) // 2
    return tb, rot


def contact_surgery_framing(tb: int, contact_coefficient=1):
    """Smooth surgery coefficient of contact r-surgery: tb + r."""
    return tb + to_rational(contact_coefficient)
