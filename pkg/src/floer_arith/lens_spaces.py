"""
lens_spaces.py

d-invariants of lens spaces.

Convention: L(p, q) is -p/q surgery on the unknot, i.e. the boundary of the
negative-definite linear plumbing whose weights are the negative continued
fraction of -p/q. With that convention

    d(L(p, q), i) = (pq - (2i + 1 - p - q)^2) / (4pq) - d(L(q, p mod q), i mod q),
    d(L(1, 0), 0) = 0.

The recursion is checked against plumbing_d_invariants, an independent
maximum over characteristic covectors of the plumbing form.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from src.exact_core.continued_fractions import neg_continued_fraction
from src.exact_core.int_matrix import IntMatrix, adjugate, determinant
from src.floer_arith.spinc import FloerArithmeticError, SpinCLabel, spin_labels
from src.plumbing_lattice.graphs import intersection_matrix, linear_plumbing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LensSpace:
    """orientation * L(p, q); L(1, 0) is S^3."""

    p: int
    q: int
    orientation: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise FloerArithmeticError("orientation must be +1 or -1")
        if self.p == 1:
            if self.q != 0:
                raise FloerArithmeticError("S^3 is L(1, 0)")
            return
        if not (self.p > self.q >= 1) or math.gcd(self.p, self.q) != 1:
            raise FloerArithmeticError(f"invalid lens space parameters L({self.p}, {self.q})")

    def reverse(self) -> "LensSpace":
        return LensSpace(self.p, self.q, -self.orientation)

    def reference_index(self) -> int:
        """Recursion index of the spin label c = 0."""
        if self.p == 1:
            return 0
        if self.q % 2:
            return (self.q - 1) // 2
        return ((self.q - 1) * pow(2, -1, self.p)) % self.p

    def index_of(self, label: SpinCLabel) -> int:
        if label.h != self.p:
            raise FloerArithmeticError(f"label {label} does not belong to L({self.p}, {self.q})")
        return (label.c + self.reference_index()) % self.p

    def labels(self) -> List[SpinCLabel]:
        return [SpinCLabel(self.p, c) for c in range(self.p)]

    def spin_labels(self) -> List[SpinCLabel]:
        return spin_labels(self.p)

    def plumbing_weights(self) -> Tuple[int, ...]:
        """Negative continued fraction of -p/q (empty for S^3)."""
        if self.p == 1:
            return ()
        return neg_continued_fraction(Fraction(-self.p, self.q)).coefficients


@lru_cache(maxsize=None)
def _d_recursive(p: int, q: int, i: int) -> Fraction:
    if p == 1:
        return Fraction(0)
    head = Fraction(p * q - (2 * i + 1 - p - q) ** 2, 4 * p * q)
    return head - _d_recursive(q, p % q, i % q)


def d_invariant_lens(lens: LensSpace, label: SpinCLabel) -> Fraction:
    """
    d-invariant of `lens` in the spin^c structure `label`.

    Reversing the orientation negates the value; conjugate labels share it.
    """
    return lens.orientation * _d_recursive(lens.p, lens.q, lens.index_of(label))


def d_connected_sum(summands: Sequence[Tuple[LensSpace, SpinCLabel]]) -> Fraction:
    """d-invariants add under connected sum."""
    return sum((d_invariant_lens(lens, label) for lens, label in summands), Fraction(0))


def recursion_values(lens: LensSpace) -> List[Fraction]:
    return [d_invariant_lens(lens, label) for label in lens.labels()]


# ---------------------------------------------------------------------------
# Characteristic-covector oracle
# ---------------------------------------------------------------------------

def class_key(form: IntMatrix, covector: Sequence[int]) -> Tuple[int, ...]:
    """adj(Q) K mod 2|det Q|: equal keys <=> K, K' differ by 2 Q Z^m."""
    adj = adjugate(form)
    modulus = 2 * abs(determinant(form))
    return tuple(
        sum(adj[i, j] * covector[j] for j in range(form.n_cols)) % modulus for i in range(form.n_rows)
    )


def _box(form: IntMatrix) -> np.ndarray:
    ranges = []
    for i in range(form.n_rows):
        w = form[i, i]
        bound = abs(w)
        ranges.append([k for k in range(-bound, bound + 1) if (k - w) % 2 == 0])
    return np.array(list(itertools.product(*ranges)), dtype=np.int64).reshape(-1, form.n_rows)


def _class_table(form: IntMatrix) -> Tuple[Dict[Tuple[int, ...], Fraction], Dict[Tuple[int, ...], Tuple[int, ...]]]:
    m = form.n_rows
    det = determinant(form)
    if det == 0:
        raise FloerArithmeticError("plumbing form is degenerate")
    adj = np.array(adjugate(form).to_lists(), dtype=np.int64)
    covectors = _box(form)
    images = covectors @ adj.T
    quadratic = np.einsum("ij,ij->i", covectors, images)
    keys = np.mod(images, 2 * abs(det))
    sign = 1 if det > 0 else -1
    unique, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    best = np.full(len(unique), np.iinfo(np.int64).min, dtype=np.int64)
    np.maximum.at(best, inverse, sign * quadratic)
    values = {}
    representatives = {}
    for key, signed, row in zip(unique.tolist(), best.tolist(), first.tolist()):
        key = tuple(int(k) for k in key)
        values[key] = (Fraction(sign * signed, det) + m) / 4
        representatives[key] = tuple(int(k) for k in covectors[row])
    return values, representatives


def plumbing_d_invariants(form: IntMatrix) -> Dict[Tuple[int, ...], Fraction]:
    """
    d-invariants of the boundary of a negative-definite plumbing, per spin^c class.

    For each class of characteristic covectors K (K_i = Q_ii mod 2) the value
    is max (K^T Q^-1 K + rank) / 4; the maximum is attained with
    |K_i| <= |Q_ii|, so only that box is scanned.

    Returns
    -------
    dict
        class_key -> d-invariant.
    """
    return _class_table(form)[0]


def _chain_form(lens: LensSpace) -> IntMatrix:
    return intersection_matrix(linear_plumbing(lens.plumbing_weights())).gram


def oracle_values(lens: LensSpace) -> List[Fraction]:
    """d-invariants of orientation * L(p, q) from the plumbing, one per class."""
    if lens.p == 1:
        return [Fraction(0)]
    return [lens.orientation * v for v in plumbing_d_invariants(_chain_form(lens)).values()]


def labelled_oracle_values(lens: LensSpace) -> List[List[Fraction]]:
    """
    Oracle values indexed by label, one list per choice of labelling.

    Label c is the class of K0 + 2c e_end, where K0 represents a
    self-conjugate class and e_end is the dual vector of either end of the
    chain. Both ends generate H^2 of the boundary.
    """
    if lens.p == 1:
        return [[Fraction(0)]]
    form = _chain_form(lens)
    values, representatives = _class_table(form)
    spin_bases = [
        representatives[key]
        for key in sorted(values)
        if class_key(form, [-k for k in representatives[key]]) == key
    ]
    m = form.n_rows
    labellings = []
    for base in spin_bases:
        for end in sorted({0, m - 1}):
            row = []
            for c in range(lens.p):
                covector = list(base)
                covector[end] += 2 * c
                row.append(lens.orientation * values[class_key(form, covector)])
            labellings.append(row)
    return labellings


def recursion_matches_oracle(lenses: Iterable[LensSpace]) -> List[LensSpace]:
    """Lens spaces whose recursion values disagree label by label with every oracle labelling."""
    mismatches = []
    for lens in lenses:
        if recursion_values(lens) not in labelled_oracle_values(lens):
            mismatches.append(lens)
    if mismatches:
        logger.warning("d-invariant recursion disagrees with the plumbing oracle on %s", mismatches)
    return mismatches
