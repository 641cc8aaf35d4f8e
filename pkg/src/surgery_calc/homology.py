"""
homology.py

First homology of surgered 3-manifolds from linking data.

Two independent routes to |H1|:
  * integralize the link (reverse slam-dunks along integral chains) and take
    the Smith normal form of the linking matrix;
  * the rational relation matrix p_i mu_i + q_i * sum_j lk_ij mu_j = 0.
Both are exposed so that tests can play one against the other.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.exact_core.continued_fractions import integral_chain
from src.exact_core.int_matrix import IntMatrix, determinant
from src.exact_core.rational import is_infinite, slope_to_pair
from src.exact_core.smith import SnfResult, smith_normal_form
from src.surgery_calc.framed_link import FramedLink, SurgeryError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomologyPresentation:
    """H1 = Z<meridians> / rows of `relations`."""

    relations: IntMatrix
    meridian_labels: Tuple[str, ...]

    def __post_init__(self):
        if not self.relations.is_square() or self.relations.n_rows != len(self.meridian_labels):
            raise SurgeryError("relation matrix must be square with one row per meridian")

    def snf(self) -> SnfResult:
        return smith_normal_form(self.relations)

    def order(self) -> int:
        """|H1|, 0 when H1 is infinite."""
        return abs(determinant(self.relations))

    def invariant_factors(self) -> Tuple[int, ...]:
        return self.snf().invariant_factors


def integralize(link: FramedLink) -> FramedLink:
    """
    Replace every rationally framed component by an integral chain.

    A component framed r = a1 - 1/(a2 - ...) keeps framing a1 and gets a
    chain of new unknots a2, a3, ... each linking its predecessor once;
    infinitely framed components are deleted. Original components keep their
    labels and relative order, chain members are appended as "<label>.1",
    "<label>.2", ...
    """
    survivors = [i for i in range(link.n_components) if not is_infinite(link.framings[i])]
    chains = {i: integral_chain(link.framings[i]) for i in survivors}
    size = len(survivors) + sum(len(c) - 1 for c in chains.values())
    rows = [[0] * size for _ in range(size)]
    framings = []
    labels = []
    for new_i, i in enumerate(survivors):
        framings.append(chains[i][0])
        labels.append(link.labels[i])
        for new_j, j in enumerate(survivors):
            if i != j:
                rows[new_i][new_j] = link.linking[i, j]
    cursor = len(survivors)
    for new_i, i in enumerate(survivors):
        previous = new_i
        for depth, coefficient in enumerate(chains[i][1:], start=1):
            framings.append(coefficient)
            labels.append(f"{link.labels[i]}.{depth}")
            rows[cursor][previous] = rows[previous][cursor] = 1
            previous = cursor
            cursor += 1
    return FramedLink(tuple(framings), IntMatrix(rows, n_cols=size), tuple(labels))


def presentation(link: FramedLink) -> HomologyPresentation:
    """Integral relation matrix (linking matrix of the integralized link)."""
    integral = link if link.is_integral() else integralize(link)
    return HomologyPresentation(integral.linking_matrix(), integral.labels)


def rational_relation_matrix(link: FramedLink) -> IntMatrix:
    """Rows p_i e_i + q_i * lk_i for framings p_i/q_i (INFINITY is 1/0)."""
    k = link.n_components
    rows = []
    for i in range(k):
        p_i, q_i = slope_to_pair(link.framings[i])
        rows.append([p_i if i == j else q_i * link.linking[i, j] for j in range(k)])
    return IntMatrix(rows, n_cols=k)


def h1_order(link: FramedLink) -> int:
    """
    Order of H1 of the 3-manifold presented by `link`.

    Parameters
    ----------
    link : FramedLink
        Surgery presentation; rational framings are integralized first.

    Returns
    -------
    int
        |H1|, with 0 meaning H1 is infinite.
    """
    try:
        order = presentation(link).order()
        logger.info("Computed h1 order %d for %d-component link", order, link.n_components)
        return order
    except Exception:
        logger.exception("Failed to compute h1 order")
        raise


def generator_reduction(pres: HomologyPresentation, generator: str) -> Dict[str, int]:
    """
    Express every meridian as a multiple of `generator` in a cyclic H1.

    With U @ R @ V = D, the coordinate change x -> x @ V carries the relation
    lattice onto the rows of D, so meridian k sits at V[k][j] in the single
    nontrivial factor j.

    Parameters
    ----------
    pres : HomologyPresentation
        Presentation of a finite cyclic group of order h.
    generator : str
        Meridian label of the chosen generator.

    Returns
    -------
    dict
        meridian label -> residue in [0, h).

    Raises
    ------
    SurgeryError
        If H1 is infinite, not cyclic, or `generator` does not generate it.
    """
    try:
        if generator not in pres.meridian_labels:
            raise SurgeryError(f"unknown meridian {generator!r}")
        snf = pres.snf()
        diagonal = snf.diagonal
        if 0 in diagonal:
            raise SurgeryError("H1 is infinite")
        nontrivial = [j for j, d in enumerate(diagonal) if d > 1]
        if len(nontrivial) > 1:
            raise SurgeryError(f"H1 is not cyclic: invariant factors {snf.invariant_factors}")
        if not nontrivial:
            return {label: 0 for label in pres.meridian_labels}
        j = nontrivial[0]
        h = diagonal[j]
        g = pres.meridian_labels.index(generator)
        try:
            inverse = pow(snf.V[g, j], -1, h)
        except ValueError:
            raise SurgeryError(f"{generator} is not a generator of Z/{h}") from None
        reduction = {
            label: (snf.V[k, j] * inverse) % h for k, label in enumerate(pres.meridian_labels)
        }
        logger.info("Reduced %d meridians to multiples of %s in Z/%d", len(reduction), generator, h)
        return reduction
    except Exception:
        logger.exception("Failed to reduce meridians to generator %s", generator)
        raise


def linking_form_chain(coefficients: List[int]) -> FramedLink:
    """Linear chain of unknots framed by `coefficients`, consecutive ones linking once."""
    k = len(coefficients)
    return FramedLink.from_components(
        tuple(coefficients), {(i, i + 1): 1 for i in range(k - 1)}, tuple(f"U{i}" for i in range(k))
    )
