"""
spinc.py

Spin^c bookkeeping on rational homology spheres with cyclic H1 of order h.

A label c in Z/h is a torsor coordinate relative to a reference spin
structure: c1 = 2c times the fixed generator. Conjugation is c -> -c, so the
spin structures are c = 0 and, for even h, c = h/2.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence

from src.surgery_calc.families import h_S, s_relation_presentation
from src.surgery_calc.homology import HomologyPresentation, generator_reduction

logger = logging.getLogger(__name__)

FORCED_ZERO = "forced-zero"
UNDETERMINED = "undetermined"


class FloerArithmeticError(Exception):
    """Raised when a degree or spin^c computation is called outside its hypotheses."""
    pass


@dataclass(frozen=True, order=True)
class SpinCLabel:
    h: int
    c: int

    def __post_init__(self):
        if self.h < 1:
            raise FloerArithmeticError(f"order must be positive, got {self.h}")
        if not 0 <= self.c < self.h:
            raise FloerArithmeticError(f"label {self.c} out of range for Z/{self.h}")

    def conjugate(self) -> "SpinCLabel":
        return SpinCLabel(self.h, (-self.c) % self.h)

    @property
    def is_spin(self) -> bool:
        return (2 * self.c) % self.h == 0

    def chern_residue(self) -> int:
        """c1 as a multiple of the generator: 2c mod h."""
        return (2 * self.c) % self.h

    @classmethod
    def from_chern_residue(cls, h: int, residue: int) -> "SpinCLabel":
        """Unique label with c1 = residue; only defined for odd h."""
        if h % 2 == 0:
            raise FloerArithmeticError("c1 does not determine the spin^c structure when h is even")
        return cls(h, (residue * pow(2, -1, h)) % h if h > 1 else 0)


def spin_labels(h: int) -> List[SpinCLabel]:
    return [SpinCLabel(h, c) for c in range(h) if (2 * c) % h == 0]


def spin_count(pres: HomologyPresentation) -> int:
    """
    Number of spin structures, |H^1(Y; Z/2)| = 2^(number of even invariant factors).

    Raises
    ------
    FloerArithmeticError
        If H1 is infinite.
    """
    diagonal = pres.snf().diagonal
    if 0 in diagonal:
        raise FloerArithmeticError("spin count needs a rational homology sphere")
    return 2 ** sum(1 for d in diagonal if d % 2 == 0)


@dataclass(frozen=True)
class SpinCExtension:
    """A spin^c structure on a cobordism extending the given ends."""

    label: SpinCLabel
    spin: bool = False

    def __post_init__(self):
        if self.spin and not self.label.is_spin:
            raise FloerArithmeticError(f"spin extension {self.label} is not self-conjugate")


def spin_component_filter(
    source: SpinCLabel,
    target: SpinCLabel,
    extensions: Sequence[SpinCExtension],
) -> str:
    """
    Decide whether the target component of a cobordism map is forced to vanish.

    Between spin structures, non-spin extensions come in conjugate pairs
    whose contributions cancel over Z/2; the component is forced to zero iff
    no extension is spin.

    Raises
    ------
    FloerArithmeticError
        If source or target is not self-conjugate, or the non-spin extensions
        are not closed under conjugation.
    """
    if not source.is_spin or not target.is_spin:
        raise FloerArithmeticError("source and target must be spin (self-conjugate) labels")
    non_spin = [e.label for e in extensions if not e.spin]
    for label in non_spin:
        if label.is_spin:
            raise FloerArithmeticError(f"non-spin extension {label} is self-conjugate")
        if non_spin.count(label) != non_spin.count(label.conjugate()):
            raise FloerArithmeticError(f"extension {label} has no conjugate partner")
    if any(e.spin for e in extensions):
        return UNDETERMINED
    return FORCED_ZERO


def s_rotation_numbers(p: int, n: int) -> dict:
    """Rotation numbers of the Legendrian realization of the S presentation, per meridian."""
    return {"a1": 0, "a2": -1, "b": -1, "c": p * (n + 1), "d": -1}


def chern_class_reduction(p: int, n: int) -> int:
    """
    c1 of the contact structure on S as a multiple of mu_d, modulo h_S.

    Sums rot(K) mu_K over the S presentation after reducing every meridian to
    a multiple of mu_d; the result is 1 for odd p.

    Raises
    ------
    FloerArithmeticError
        For even p.
    """
    try:
        if p % 2 == 0:
            raise FloerArithmeticError("the Chern class reduction needs odd p")
        pres = s_relation_presentation(p, n)
        reduction = generator_reduction(pres, "d")
        h = h_S(p, n)
        residue = sum(rot * reduction[label] for label, rot in s_rotation_numbers(p, n).items()) % h
        logger.info("Chern class reduction for S(%d,%d): %d mod %d", p, n, residue, h)
        return residue
    except Exception:
        logger.exception("Failed Chern class reduction for p=%s, n=%s", p, n)
        raise
