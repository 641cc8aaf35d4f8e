"""
embedding.py

Exhaustive search for embeddings of a negative-definite lattice into the
diagonal lattice (Z^N, -I), and the obstruction verdict for build_W(p, n).

Search layout
-------------
* Basis vectors are placed in order of decreasing |weight|, then
  decreasing degree, then index.
* Coordinates already touched by a placed vector are enumerated freely;
  untouched coordinates are interchangeable and sign-symmetric, so the new
  vector's untouched part is forced to be a nonincreasing run of positive
  entries on the first untouched coordinates.
* Partial dot products are pruned with Cauchy-Schwarz against the norm
  still to be spent.
* The tree below a fixed prefix of the order is split into branches that
  can run in a process pool; branches are merged in their enumeration
  order, so counts and verdicts do not depend on the worker count.
"""

import hashlib
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterator, List, Optional, Sequence, Tuple

from src.exact_core.int_matrix import NEGATIVE_DEFINITE
from src.plumbing_lattice.graphs import Lattice, LatticeError, build_W, intersection_matrix

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 5_000_000
SPLIT_DEPTH = 2

NO_EMBEDDING = "no-embedding-certificate"
EMBEDDING_FOUND = "embedding-found"

Vector = Tuple[int, ...]


class SearchBudgetExceeded(Exception):
    """Raised when the embedding search runs out of its node budget before finishing."""
    pass


class _BudgetHit(Exception):
    pass


@dataclass(frozen=True)
class DiagonalEmbedding:
    """One vector of Z^N per basis element, in the lattice's own basis order."""

    vectors: Tuple[Vector, ...]
    dimension: int

    def verify(self, lattice: Lattice) -> bool:
        k = lattice.rank
        if len(self.vectors) != k:
            return False
        return all(
            -sum(a * b for a, b in zip(self.vectors[i], self.vectors[j])) == lattice.gram[i, j]
            for i in range(k)
            for j in range(k)
        )

    def to_dict(self) -> dict:
        return {"dimension": self.dimension, "vectors": [list(v) for v in self.vectors]}


@dataclass(frozen=True)
class SearchCertificate:
    order: Tuple[int, ...]
    dimension: int
    node_count: int
    branch_counts: Tuple[int, ...]
    found: bool
    digest: str = field(default="")

    def payload(self) -> dict:
        return {
            "order": list(self.order),
            "dimension": self.dimension,
            "node_count": self.node_count,
            "branch_counts": list(self.branch_counts),
            "found": self.found,
        }

    def to_dict(self) -> dict:
        document = self.payload()
        document["digest"] = self.digest
        return document


@dataclass(frozen=True)
class EmbeddingSearchResult:
    embedding: Optional[DiagonalEmbedding]
    certificate: SearchCertificate

    @property
    def verdict(self) -> str:
        return EMBEDDING_FOUND if self.embedding is not None else NO_EMBEDDING


def search_order(lattice: Lattice) -> Tuple[int, ...]:
    """Decreasing |weight|, then decreasing degree, then index."""
    gram = lattice.gram
    k = lattice.rank

    def degree(i: int) -> int:
        return sum(1 for j in range(k) if j != i and gram[i, j])

    return tuple(sorted(range(k), key=lambda i: (-abs(gram[i, i]), -degree(i), i)))


def _square_partitions(total: int, largest: int, slots: int) -> Iterator[List[int]]:
    """Nonincreasing positive x with sum x^2 == total, len <= slots."""
    if total == 0:
        yield []
        return
    if slots == 0:
        return
    top = min(largest, math.isqrt(total))
    for x in range(top, 0, -1):
        for rest in _square_partitions(total - x * x, x, slots - 1):
            yield [x] + rest


class _Search:
    def __init__(self, gram: Tuple[Tuple[int, ...], ...], order: Tuple[int, ...], dimension: int, budget: int):
        self.gram = gram
        self.order = order
        self.dimension = dimension
        self.budget = budget
        self.nodes = 0
        self.branches = [0] * len(order)

    def candidates(self, depth: int, placed: Sequence[Vector], used: int) -> List[Tuple[Vector, int]]:
        vertex = self.order[depth]
        norm = -self.gram[vertex][vertex]
        if norm <= 0:
            return []
        targets = [-self.gram[vertex][self.order[k]] for k in range(depth)]
        # suffix[k][c] = sum of squares of placed[k] over touched coordinates >= c
        suffix = []
        for vec in placed:
            tail = [0] * (used + 1)
            for c in range(used - 1, -1, -1):
                tail[c] = tail[c + 1] + vec[c] * vec[c]
            suffix.append(tail)

        found: List[Tuple[Vector, int]] = []
        prefix = [0] * used

        def touched(c: int, remaining: int, dots: List[int]) -> None:
            if c == used:
                if dots != targets:
                    return
                for tail in _square_partitions(remaining, remaining, self.dimension - used):
                    vector = tuple(prefix) + tuple(tail) + (0,) * (self.dimension - used - len(tail))
                    found.append((vector, used + len(tail)))
                return
            bound = math.isqrt(remaining)
            for x in range(-bound, bound + 1):
                left = remaining - x * x
                new_dots = [d + x * placed[k][c] for k, d in enumerate(dots)]
                if all(
                    (targets[k] - new_dots[k]) ** 2 <= left * suffix[k][c + 1] for k in range(depth)
                ):
                    prefix[c] = x
                    touched(c + 1, left, new_dots)
            prefix[c] = 0

        touched(0, norm, [0] * depth)
        return found

    def run(self, depth: int, placed: List[Vector], used: int) -> Optional[List[Vector]]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetHit()
        if depth == len(self.order):
            return list(placed)
        options = self.candidates(depth, placed, used)
        self.branches[depth] += len(options)
        for vector, new_used in options:
            placed.append(vector)
            result = self.run(depth + 1, placed, used=new_used)
            if result is not None:
                return result
            placed.pop()
        return None

    def prefixes(self, depth: int, stop: int, placed: List[Vector], used: int) -> Iterator[Tuple[List[Vector], int]]:
        """Partial placements of the first `stop` vertices, counted like search nodes."""
        if depth == stop:
            yield list(placed), used
            return
        self.nodes += 1
        options = self.candidates(depth, placed, used)
        self.branches[depth] += len(options)
        for vector, new_used in options:
            placed.append(vector)
            yield from self.prefixes(depth + 1, stop, placed, new_used)
            placed.pop()


def _search_branch(args) -> Tuple[str, int, List[int], Optional[List[Vector]]]:
    gram, order, dimension, budget, start, placed, used = args
    search = _Search(gram, order, dimension, budget)
    try:
        result = search.run(start, list(placed), used)
    except _BudgetHit:
        return "budget", search.nodes, search.branches, None
    return ("found" if result is not None else "exhausted"), search.nodes, search.branches, result


def _digest(certificate: SearchCertificate, embedding: Optional[DiagonalEmbedding]) -> str:
    document = certificate.payload()
    document["embedding"] = None if embedding is None else embedding.to_dict()
    return hashlib.sha256(json.dumps(document, sort_keys=True).encode("utf-8")).hexdigest()


def embed_into_diagonal(
    lattice: Lattice,
    dimension: int,
    budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
) -> EmbeddingSearchResult:
    """
    Search for vectors v_i in Z^N with -v_i . v_j = gram[i][j].

    Parameters
    ----------
    lattice : Lattice
        Negative-definite lattice.
    dimension : int
        N, at least the rank of the lattice.
    budget : int
        Maximum number of search nodes; exceeding it raises
        SearchBudgetExceeded rather than returning a verdict.
    workers : int
        Processes used for the branches below the split depth.

    Returns
    -------
    EmbeddingSearchResult
        The embedding (re-verified) or None, plus a reproducible certificate.
    """
    try:
        if lattice.definiteness() != NEGATIVE_DEFINITE:
            raise LatticeError(f"embedding search needs a negative-definite lattice, got {lattice.definiteness()}")
        if dimension < lattice.rank:
            raise LatticeError(f"dimension {dimension} is below the lattice rank {lattice.rank}")
        gram = tuple(tuple(row) for row in lattice.gram.rows)
        order = search_order(lattice)
        root = _Search(gram, order, dimension, budget)
        stop = min(SPLIT_DEPTH, len(order))
        branches = list(root.prefixes(0, stop, [], 0))
        logger.debug("Embedding search: %d branches below depth %d, N=%d", len(branches), stop, dimension)

        jobs = [(gram, order, dimension, budget, stop, placed, used) for placed, used in branches]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = pool.map(_search_branch, jobs)
                merged = _merge(root, outcomes, budget)
        else:
            merged = _merge(root, map(_search_branch, jobs), budget)

        vectors = merged
        embedding = None
        if vectors is not None:
            by_vertex = [None] * lattice.rank
            for position, vertex in enumerate(order):
                by_vertex[vertex] = vectors[position]
            embedding = DiagonalEmbedding(tuple(by_vertex), dimension)
            if not embedding.verify(lattice):
                raise LatticeError("search returned an embedding that fails re-verification")

        certificate = SearchCertificate(order, dimension, root.nodes, tuple(root.branches), embedding is not None)
        certificate = replace(certificate, digest=_digest(certificate, embedding))
        logger.info(
            "Embedding search rank %d into Z^%d: %s after %d nodes",
            lattice.rank,
            dimension,
            "found" if embedding else "none",
            root.nodes,
        )
        return EmbeddingSearchResult(embedding, certificate)
    except SearchBudgetExceeded:
        logger.warning("Embedding search exceeded its budget of %d nodes", budget)
        raise
    except Exception:
        logger.exception("Failed embedding search")
        raise


def _merge(root: _Search, outcomes, budget: int) -> Optional[List[Vector]]:
    """Fold branch outcomes in order into `root`; stop at the first embedding."""
    for status, nodes, branch_counts, vectors in outcomes:
        root.nodes += nodes
        root.branches = [a + b for a, b in zip(root.branches, branch_counts)]
        if status == "budget" or root.nodes > budget:
            raise SearchBudgetExceeded(f"node budget {budget} exhausted")
        if status == "found":
            return vectors
    return None


@dataclass(frozen=True)
class DonaldsonVerdict:
    p: int
    n: int
    rank: int
    dimension: int
    verdict: str
    certificate: SearchCertificate
    embedding: Optional[DiagonalEmbedding] = None


def donaldson_obstruction(
    p: int,
    n: int,
    margin: int = 0,
    budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
) -> DonaldsonVerdict:
    """
    Run the diagonal-embedding search on the intersection lattice of
    build_W(p, n) with N = rank + margin.

    Raises SearchBudgetExceeded when the budget runs out, which is distinct
    from a certified "no-embedding-certificate" verdict.
    """
    if margin < 0:
        raise LatticeError("margin must be nonnegative")
    lattice = intersection_matrix(build_W(p, n))
    result = embed_into_diagonal(lattice, lattice.rank + margin, budget=budget, workers=workers)
    return DonaldsonVerdict(
        p, n, lattice.rank, lattice.rank + margin, result.verdict, result.certificate, result.embedding
    )
