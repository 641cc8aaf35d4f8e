"""
spin_structures.py

Spin structures on -L(p, n) and which of them extends over the two
2-handle cobordisms V (to -S) and W (to -E).

Procedure:
  1. Start from the Seifert presentation with central curve K; deleting K
     leaves -L, a disjoint union of three unknot chains.
  2. A +1 Rolfsen twist on c turns the (p, -n) chain into the positive chain
     (p + 1, n/(n - 1)); integralize.
  3. Spin structures on -L <-> characteristic sublinks C (Q chi_C = diag Q
     mod 2).
  4. C extends over the handle on K with framing f iff
     sum_{j in C} lk(K, j) = f mod 2; V uses f = -1, W uses f = 0.
  5. On every chain the class of Q chi_C is evaluated by the plumbing oracle
     and matched against the spin labels of the lens summand.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from src.exact_core.int_matrix import NEGATIVE_DEFINITE, POSITIVE_DEFINITE, IntMatrix, definiteness
from src.floer_arith.degrees import quarter_shift
from src.floer_arith.lens_spaces import LensSpace, class_key, d_connected_sum, d_invariant_lens, plumbing_d_invariants
from src.floer_arith.spinc import SpinCLabel
from src.surgery_calc.families import CENTRAL, lens_summands, seifert_presentation
from src.surgery_calc.framed_link import FramedLink
from src.surgery_calc.homology import integralize
from src.surgery_calc.kirby_moves import rolfsen_twist

logger = logging.getLogger(__name__)

V_FRAMING = -1
W_FRAMING = 0


class SpinIdentificationError(Exception):
    """Raised when spin structures cannot be matched consistently across the two computations."""
    pass


def characteristic_sublinks(matrix: IntMatrix) -> List[Tuple[int, ...]]:
    """All index sets C with sum_{j in C} Q_ij = Q_ii mod 2 for every i."""
    m = matrix.n_rows
    found = []
    for bits in itertools.product((0, 1), repeat=m):
        if all(
            (sum(matrix[i, j] for j in range(m) if bits[j]) - matrix[i, i]) % 2 == 0 for i in range(m)
        ):
            found.append(tuple(j for j in range(m) if bits[j]))
    return found


def extends_over_handle(sublink: Sequence[int], knot_linking: Sequence[int], framing: int) -> bool:
    """Whether the spin structure of `sublink` extends over a 2-handle along K."""
    return (sum(knot_linking[j] for j in sublink) - framing) % 2 == 0


def _summand_value(form: IntMatrix, covector: Sequence[int]) -> Fraction:
    kind = definiteness(form)
    if kind == NEGATIVE_DEFINITE:
        return plumbing_d_invariants(form)[class_key(form, covector)]
    if kind == POSITIVE_DEFINITE:
        flipped = -form
        return -plumbing_d_invariants(flipped)[class_key(flipped, [-x for x in covector])]
    raise SpinIdentificationError(f"summand form is {kind}; need a sign-definite chain")


@dataclass(frozen=True)
class SpinEvaluation:
    """A spin structure on -L: its sublink, lens-summand labels and d-invariant."""

    sublink: Tuple[str, ...]
    summands: Tuple[Tuple[LensSpace, SpinCLabel], ...]
    d: Fraction


@dataclass(frozen=True)
class MinusLSpinDegrees:
    p: int
    n: int
    tau_V: SpinEvaluation
    tau_W: SpinEvaluation

    @property
    def predicted_tau_E(self) -> Fraction:
        """deg(tau_E) = deg(tau_W) + 1/4."""
        return self.tau_W.d + quarter_shift()


def _minus_l_with_knot(p: int, n: int) -> Tuple[FramedLink, Dict[str, int]]:
    link = seifert_presentation(0, p, n)
    k = link.index(CENTRAL)
    knot_linking = {label: link.linking_number(k, j) for j, label in enumerate(link.labels) if j != k}
    minus_l = link.delete(k)
    twisted = rolfsen_twist(minus_l, minus_l.index("c"), 1)
    return integralize(twisted), knot_linking


def evaluate_spin_structure(link: FramedLink, sublink: Sequence[int]) -> SpinEvaluation:
    """Identify the lens-summand spin labels of the spin structure given by `sublink`."""
    matrix = link.linking_matrix()
    chosen = set(sublink)
    pieces = []
    for summand in lens_summands(link):
        indices = [link.index(label) for label in summand.labels]
        block = matrix.principal_submatrix(indices)
        chi = [1 if i in chosen else 0 for i in indices]
        covector = [sum(block[r, s] * chi[s] for s in range(len(indices))) for r in range(len(indices))]
        value = _summand_value(block, covector)
        lens = LensSpace(summand.order, summand.q, summand.orientation)
        matches = [label for label in lens.spin_labels() if d_invariant_lens(lens, label) == value]
        if not matches:
            raise SpinIdentificationError(
                f"no spin label of {lens} has d-invariant {value} (sublink {sorted(chosen)})"
            )
        pieces.append((lens, matches[0]))
    return SpinEvaluation(
        tuple(link.labels[i] for i in sorted(chosen)),
        tuple(pieces),
        d_connected_sum(pieces),
    )


def minus_l_spin_degrees(p: int, n: int) -> MinusLSpinDegrees:
    """
    d-invariants of the two spin structures on -L(p, n): tau_V extends over
    V, tau_W over W.

    Raises
    ------
    SpinIdentificationError
        If the number of spin structures is not two or the parity split fails.
    """
    try:
        link, knot_linking = _minus_l_with_knot(p, n)
        lk = [knot_linking.get(label, 0) for label in link.labels]
        sublinks = characteristic_sublinks(link.linking_matrix())
        if len(sublinks) != 2:
            raise SpinIdentificationError(f"-L({p},{n}) should have two spin structures, found {len(sublinks)}")
        over_v = [c for c in sublinks if extends_over_handle(c, lk, V_FRAMING)]
        over_w = [c for c in sublinks if extends_over_handle(c, lk, W_FRAMING)]
        if len(over_v) != 1 or len(over_w) != 1:
            raise SpinIdentificationError("each cobordism must receive exactly one spin structure")
        result = MinusLSpinDegrees(
            p, n, evaluate_spin_structure(link, over_v[0]), evaluate_spin_structure(link, over_w[0])
        )
        logger.info(
            "Spin degrees on -L(%d,%d): tau_V %s, tau_W %s", p, n, result.tau_V.d, result.tau_W.d
        )
        return result
    except Exception:
        logger.exception("Failed to identify spin structures on -L(%s,%s)", p, n)
        raise
