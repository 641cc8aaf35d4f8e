"""
families.py

The four manifold families E, S, L, U indexed by (p, n), p >= 2, n >= 1.

Each family has a closed-form |H1| and a surgery presentation: a central
unknot with framing e0 and three legs
    a : -p
    b - c : the chain (p, -n), i.e. coefficient (pn + 1)/n
    d : p(n + 1) + 1
presents -E (e0 = 0), -S (e0 = -1), -U (e0 = +1) and, with the central
component deleted (e0 = INFINITY), -L = L(p,1) # -L(pn+1,n) # -L(p(n+1)+1,1).
E, S and U are also surgeries on the torus knot T(p, pn + 1).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

import networkx as nx

from src.exact_core.continued_fractions import evaluate_continued_fraction
from src.exact_core.int_matrix import IntMatrix
from src.exact_core.rational import INFINITY, Slope, format_rational
from src.surgery_calc.framed_link import FramedLink, SurgeryError
from src.surgery_calc.homology import HomologyPresentation, h1_order, integralize
from src.surgery_calc.torus_knots import is_lspace_surgery, knot_surgery_presentation

logger = logging.getLogger(__name__)

FAMILIES = ("E", "S", "L", "U")

CENTRAL_FRAMING: Dict[str, Slope] = {"E": Fraction(0), "S": Fraction(-1), "U": Fraction(1), "L": INFINITY}

CENTRAL = "k"


class FamilyConsistencyError(Exception):
    """Raised when a closed-form order disagrees with the order computed from a presentation."""
    pass


def _check_parameters(p: int, n: int) -> None:
    if isinstance(p, bool) or isinstance(n, bool) or not isinstance(p, int) or not isinstance(n, int):
        raise SurgeryError("p and n must be integers")
    if p < 2 or n < 1:
        raise SurgeryError(f"families need p >= 2 and n >= 1, got p={p}, n={n}")


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def h_E(p: int, n: int) -> int:
    return p * p * n - p * n - 1


def h_S(p: int, n: int) -> int:
    return p * (p * n + 1) * (p * (n + 1) + 2) - p * (n + 1) - 1


def h_L(p: int, n: int) -> int:
    return p * (p * n + 1) * (p * (n + 1) + 1)


def h_U(p: int, n: int) -> int:
    return p ** 3 * n * (n + 1) + p * (p + 1) * (n + 1) + 1


_CLOSED_FORMS = {"E": h_E, "S": h_S, "L": h_L, "U": h_U}


def closed_form_order(family: str, p: int, n: int) -> int:
    if family not in _CLOSED_FORMS:
        raise SurgeryError(f"unknown family {family!r}; expected one of {FAMILIES}")
    _check_parameters(p, n)
    return _CLOSED_FORMS[family](p, n)


def torus_knot(p: int, n: int) -> Tuple[int, int]:
    return (p, p * n + 1)


def surgery_coefficient(family: str, p: int, n: int) -> Optional[Fraction]:
    """Coefficient r with family = S^3_r(T(p, pn+1)); None for L."""
    _check_parameters(p, n)
    if family == "E":
        return Fraction(h_E(p, n))
    if family == "S":
        return p * (n * p + 1) - Fraction(p * (n + 1) + 1, p * (n + 1) + 2)
    if family == "U":
        return p * p * n + p + 1 + Fraction(1, p * (n + 1))
    if family == "L":
        return None
    raise SurgeryError(f"unknown family {family!r}; expected one of {FAMILIES}")


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

def seifert_presentation(central, p: int, n: int) -> FramedLink:
    """Central unknot `k` framed `central` with legs a, b - c, d (see module docstring)."""
    _check_parameters(p, n)
    framings = (central, -p, p, -n, p * (n + 1) + 1)
    links = {(0, 1): 1, (0, 2): 1, (2, 3): 1, (0, 4): 1}
    return FramedLink.from_components(framings, links, (CENTRAL, "a", "b", "c", "d"))


def family_presentation(family: str, p: int, n: int) -> FramedLink:
    if family not in CENTRAL_FRAMING:
        raise SurgeryError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return seifert_presentation(CENTRAL_FRAMING[family], p, n)


def s_relation_presentation(p: int, n: int) -> HomologyPresentation:
    """
    Relation matrix of S on the meridians a1, a2, b, c, d:

        n a1 + a2 = 0,  a1 - p a2 + d = 0,  p b + d = 0,
        -(p(n+1)+1) c + d = 0,  a2 + b + c + d = 0.
    """
    _check_parameters(p, n)
    rows = [
        [n, 1, 0, 0, 0],
        [1, -p, 0, 0, 1],
        [0, 0, p, 0, 1],
        [0, 0, 0, -p * (n + 1) - 1, 1],
        [0, 1, 1, 1, 1],
    ]
    return HomologyPresentation(IntMatrix(rows), ("a1", "a2", "b", "c", "d"))


def s_generator_coefficients(p: int, n: int) -> Dict[str, int]:
    """Closed-form multiples of mu_d expressing the other meridians of S (not reduced)."""
    a1 = n * (n + 1) * p * p + 2 * n * p - 1 - n
    return {
        "a1": a1,
        "a2": -n * a1,
        "b": (-n * n - n) * p * p + (-1 - 3 * n) * p - 1 + n,
        "c": (n * n + 2 * n + 1) * n * p * p + p * (2 * n * n + 3 * n + 1) - (n + 2) * n,
        "d": 1,
    }


# ---------------------------------------------------------------------------
# Lens summands
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LensSummand:
    """
    One connected summand S^3_r(U) of a presentation by disjoint unknot chains.

    With L(p, q) the -p/q surgery on the unknot, the summand is
    orientation * L(order, q); order 1 is S^3, stored as (1, 0).
    """

    order: int
    q: int
    orientation: int
    coefficients: Tuple[int, ...]
    labels: Tuple[str, ...]

    @property
    def coefficient(self) -> Fraction:
        return evaluate_continued_fraction(self.coefficients)


def _summand_from_chain(coefficients, labels) -> LensSummand:
    r = evaluate_continued_fraction(coefficients)
    if r == 0:
        raise SurgeryError(f"chain {labels} presents S^1 x S^2, not a lens space")
    order = abs(r.numerator)
    if order == 1:
        return LensSummand(1, 0, 1, tuple(coefficients), tuple(labels))
    orientation = 1 if r < 0 else -1
    logger.debug("Chain %s evaluates to %s: %+d L(%d, %d)", list(labels), r, orientation, order, r.denominator % order)
    return LensSummand(order, r.denominator % order, orientation, tuple(coefficients), tuple(labels))


def link_graph(link: FramedLink) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(link.n_components))
    for i in range(link.n_components):
        for j in range(i + 1, link.n_components):
            if link.linking[i, j]:
                graph.add_edge(i, j, weight=link.linking[i, j])
    return graph


def lens_summands(link: FramedLink) -> Tuple[LensSummand, ...]:
    """
    Split a presentation by disjoint linear unknot chains into lens spaces.

    Each chain is read from its lowest-index end; q is taken from the
    continued-fraction value of the chain, never assumed.
    """
    integral = integralize(link)
    graph = link_graph(integral)
    summands = []
    for nodes in sorted(nx.connected_components(graph), key=min):
        sub = graph.subgraph(nodes)
        if not nx.is_tree(sub) or max(dict(sub.degree()).values(), default=0) > 2:
            raise SurgeryError(f"components {sorted(nodes)} do not form a linear chain")
        if any(abs(w) != 1 for _, _, w in sub.edges(data="weight")):
            raise SurgeryError("chain members must link their neighbours once")
        ends = [v for v in nodes if sub.degree(v) <= 1]
        order = list(nx.dfs_preorder_nodes(sub, source=min(ends)))
        summands.append(
            _summand_from_chain(
                [integral.framings[v].numerator for v in order], [integral.labels[v] for v in order]
            )
        )
    return tuple(summands)


# ---------------------------------------------------------------------------
# Family records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ManifoldFamilyRecord:
    family: str
    p: int
    n: int
    h: int
    surgery_coefficient: Optional[Fraction]
    lens_summands: Optional[Tuple[LensSummand, ...]]
    torus_knot: Optional[Tuple[int, int]]
    lspace: Optional[bool]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "n": self.n,
            "h": self.h,
            "surgery_coefficient": None if self.surgery_coefficient is None else format_rational(self.surgery_coefficient),
            "lens_summands": None
            if self.lens_summands is None
            else [{"order": s.order, "q": s.q, "orientation": s.orientation} for s in self.lens_summands],
            "torus_knot": None if self.torus_knot is None else list(self.torus_knot),
            "lspace": self.lspace,
        }


def family_record(family: str, p: int, n: int) -> ManifoldFamilyRecord:
    """
    Build the record of family(p, n) and cross-check its order.

    The closed form is compared with |H1| of the Seifert presentation and,
    for E, S and U, with |numerator(r)| of the torus-knot surgery.

    Raises
    ------
    FamilyConsistencyError
        If any two of the computed orders disagree.
    """
    try:
        h = closed_form_order(family, p, n)
        presented = h1_order(family_presentation(family, p, n))
        if presented != h:
            raise FamilyConsistencyError(
                f"{family}({p},{n}): closed form {h} != presentation order {presented}"
            )
        r = surgery_coefficient(family, p, n)
        knot = None
        lspace = None
        summands = None
        if r is not None:
            knot = torus_knot(p, n)
            knot_order = h1_order(knot_surgery_presentation(r))
            if knot_order != h:
                raise FamilyConsistencyError(
                    f"{family}({p},{n}): closed form {h} != |numerator({r})| = {knot_order}"
                )
            lspace = is_lspace_surgery(*knot, r, strict=family != "E")
        else:
            summands = lens_summands(family_presentation(family, p, n))
            product = math.prod(s.order for s in summands)
            if product != h:
                raise FamilyConsistencyError(
                    f"{family}({p},{n}): lens summand orders multiply to {product}, expected {h}"
                )
        logger.info("Verified %s(%d,%d): |H1| = %d", family, p, n, h)
        return ManifoldFamilyRecord(family, p, n, h, r, summands, knot, lspace)
    except Exception:
        logger.exception("Failed to build family record %s(%s,%s)", family, p, n)
        raise
