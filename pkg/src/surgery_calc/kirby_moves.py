"""
kirby_moves.py

Kirby moves at linking-matrix level: Rolfsen twists, blow-downs and their
inverse blow-ups. The twisted / blown-down component is assumed to be an
unknot; the engine only tracks framings and linking numbers.
"""

import logging
from fractions import Fraction
from typing import Sequence

from src.exact_core.int_matrix import IntMatrix
from src.exact_core.rational import is_infinite, slope_from_pair, slope_to_pair
from src.surgery_calc.framed_link import FramedLink, SurgeryError

logger = logging.getLogger(__name__)


def _shift(framing, amount: int):
    """Add an integer to a framing; INFINITY absorbs it."""
    if is_infinite(framing):
        return framing
    return framing + amount


def rolfsen_twist(link: FramedLink, component: int, t: int) -> FramedLink:
    """
    Apply t full twists along the unknot `component`.

    The twisted component's coefficient r = p/q becomes p/(q + t*p), i.e.
    1/(1/r + t), with q + t*p = 0 giving INFINITY. Every other component j
    gains t * lk(i, j)^2 in framing, and each pair j, k gains
    t * lk(i, j) * lk(i, k) in linking number.

    Parameters
    ----------
    link : FramedLink
        Presentation containing the unknot.
    component : int
        Index of the unknot.
    t : int
        Number of twists (any sign).

    Returns
    -------
    FramedLink
        Presentation of the same 3-manifold.
    """
    if not 0 <= component < link.n_components:
        raise SurgeryError(f"component {component} out of range")
    if isinstance(t, bool) or not isinstance(t, int):
        raise SurgeryError("twist count must be an integer")
    p, q = slope_to_pair(link.framings[component])
    lk = link.linking_vector(component)
    k = link.n_components
    framings = []
    for j in range(k):
        if j == component:
            framings.append(slope_from_pair(p, q + t * p))
        else:
            framings.append(_shift(link.framings[j], t * lk[j] * lk[j]))
    rows = [
        [0 if a == b else link.linking[a, b] + (0 if component in (a, b) else t * lk[a] * lk[b]) for b in range(k)]
        for a in range(k)
    ]
    return FramedLink(tuple(framings), IntMatrix(rows, n_cols=k), link.labels)


def blow_down(link: FramedLink, component: int) -> FramedLink:
    """
    Remove a (+1)- or (-1)-framed unknot.

    For framing e = +-1 every other framing f_j becomes f_j - e * l_j^2 and
    each linking number l_jk becomes l_jk - e * l_j * l_k, where l_j is the
    linking of component j with the removed unknot.
    """
    try:
        if not 0 <= component < link.n_components:
            raise SurgeryError(f"component {component} out of range")
        framing = link.framings[component]
        if is_infinite(framing) or framing not in (Fraction(1), Fraction(-1)):
            raise SurgeryError(f"blow-down needs framing +1 or -1, got {framing}")
        epsilon = int(framing)
        twisted = rolfsen_twist(link, component, -epsilon)
        result = twisted.delete(component)
        logger.debug("Blew down %s (framing %+d)", link.labels[component], epsilon)
        return result
    except Exception:
        logger.exception("Failed to blow down component %s", component)
        raise


def blow_up(link: FramedLink, linking: Sequence[int], sign: int, label: str = None) -> FramedLink:
    """
    Add a (sign)-framed unknot linking component j `linking[j]` times.

    Inverse of blow_down: framings gain sign * l_j^2, linking numbers gain
    sign * l_j * l_k, and blow_down on the new (last) component restores
    `link`.
    """
    if sign not in (1, -1):
        raise SurgeryError("blow-up sign must be +1 or -1")
    k = link.n_components
    if len(linking) != k:
        raise SurgeryError(f"linking vector needs {k} entries")
    lk = [int(x) for x in linking]
    framings = [_shift(link.framings[j], sign * lk[j] * lk[j]) for j in range(k)] + [Fraction(sign)]
    rows = [
        [0 if a == b else link.linking[a, b] + sign * lk[a] * lk[b] for b in range(k)] + [lk[a]]
        for a in range(k)
    ]
    rows.append(lk + [0])
    new_label = label or f"E{k}"
    while new_label in link.labels:
        new_label += "'"
    return FramedLink(tuple(framings), IntMatrix(rows, n_cols=k + 1), link.labels + (new_label,))
