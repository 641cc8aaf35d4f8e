"""
graphs.py

Weighted plumbing graphs, their intersection lattices and the
negative-definiteness criterion for star-shaped plumbings.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import networkx as nx

from src.exact_core.continued_fractions import evaluate_continued_fraction
from src.exact_core.int_matrix import IntMatrix, definiteness, determinant

logger = logging.getLogger(__name__)


class LatticeError(Exception):
    """Raised for malformed plumbing graphs or lattices outside an operation's domain."""
    pass


@dataclass(frozen=True)
class PlumbingGraph:
    """Integer vertex weights and undirected edges (i, j), i < j."""

    weights: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        k = len(weights)
        normalized = set()
        for edge in self.edges:
            i, j = (int(x) for x in edge)
            if i == j or not (0 <= i < k and 0 <= j < k):
                raise LatticeError(f"invalid edge {edge} for {k} vertices")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @property
    def n_vertices(self) -> int:
        return len(self.weights)

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        for index, weight in enumerate(self.weights):
            g.add_node(index, weight=weight)
        g.add_edges_from(self.edges)
        return g

    def is_tree(self) -> bool:
        return self.n_vertices > 0 and nx.is_tree(self.graph())

    def degrees(self) -> List[int]:
        g = self.graph()
        return [g.degree(v) for v in range(self.n_vertices)]

    def to_dict(self) -> dict:
        return {"weights": list(self.weights), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, document: dict) -> "PlumbingGraph":
        try:
            return cls(tuple(document["weights"]), tuple(tuple(e) for e in document["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise LatticeError(f"malformed plumbing graph document: {exc}") from exc


@dataclass(frozen=True)
class Lattice:
    gram: IntMatrix

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise LatticeError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return self.gram.n_rows

    def determinant(self) -> int:
        return determinant(self.gram)

    def definiteness(self) -> str:
        return definiteness(self.gram)


def star_plumbing(central: int, legs: Sequence[Sequence[int]]) -> PlumbingGraph:
    """Central vertex 0 with linear legs; each leg is listed from the centre outward."""
    weights = [central]
    edges = []
    for leg in legs:
        previous = 0
        for weight in leg:
            weights.append(weight)
            edges.append((previous, len(weights) - 1))
            previous = len(weights) - 1
    return PlumbingGraph(tuple(weights), tuple(edges))


def linear_plumbing(weights: Sequence[int]) -> PlumbingGraph:
    return PlumbingGraph(tuple(weights), tuple((i, i + 1) for i in range(len(weights) - 1)))


def w_legs(p: int, n: int) -> List[List[int]]:
    """Legs of the star: [-p], p(n+1) vertices of -2, and (p-1) vertices of -2 closed by -n-1."""
    return [[-p], [-2] * (p * (n + 1)), [-2] * (p - 1) + [-n - 1]]


def build_W(p: int, n: int) -> PlumbingGraph:
    """
    Star plumbing bounding -E(p, n): central -2 with legs w_legs(p, n).

    p(n+2) + 2 vertices, |det| = p^2 n - pn - 1; (2, 1) is the E8 graph.
    """
    if p < 2 or n < 1:
        raise LatticeError(f"need p >= 2 and n >= 1, got p={p}, n={n}")
    return star_plumbing(-2, w_legs(p, n))


def intersection_matrix(graph: PlumbingGraph) -> Lattice:
    """Weights on the diagonal, 1 for every edge."""
    k = graph.n_vertices
    rows = [[0] * k for _ in range(k)]
    for i, weight in enumerate(graph.weights):
        rows[i][i] = weight
    for i, j in graph.edges:
        rows[i][j] = rows[j][i] = 1
    return Lattice(IntMatrix(rows, n_cols=k))


def leg_fraction(leg: Sequence[int]) -> Fraction:
    """beta/alpha for a leg [-b1, ..., -bk] with alpha/beta = [b1, ..., bk]."""
    if any(w > -2 for w in leg):
        raise LatticeError(f"leg weights must be <= -2, got {list(leg)}")
    return 1 / evaluate_continued_fraction([-w for w in leg])


def star_definiteness_sum(central: int, legs: Sequence[Sequence[int]]) -> Fraction:
    """
    central + sum of leg fractions; the star is negative definite iff the
    sum is negative (legs with weights <= -2).
    """
    return central + sum((leg_fraction(leg) for leg in legs), Fraction(0))


def seifert_leg_fractions(p: int, n: int) -> Tuple[Fraction, Fraction, Fraction]:
    """Leg fractions of build_W(p, n): 1/p, p(n+1)/(p(n+1)+1), (n(p-1)+1)/(np+1)."""
    return tuple(leg_fraction(leg) for leg in w_legs(p, n))


def nr_obstruction_sum(p: int, n: int) -> Fraction:
    """
    -2 + (n(p-1)+1)/(np+1) + 1/p + p(n+1)/(p(n+1)+1).

    Negative exactly when build_W(p, n) is negative definite; equals
    -h_E / h_L.
    """
    if p < 2 or n < 1:
        raise LatticeError(f"need p >= 2 and n >= 1, got p={p}, n={n}")
    value = (
        -2
        + Fraction(n * (p - 1) + 1, n * p + 1)
        + Fraction(1, p)
        + Fraction(p * (n + 1), p * (n + 1) + 1)
    )
    return value
