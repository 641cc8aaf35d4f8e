# tests/test_plumbing_lattice.py
"""
Pytest suite for src.plumbing_lattice: plumbing graphs, the lattice of
build_W(p, n), the definiteness sum and the diagonal-embedding search.
"""

from fractions import Fraction

import pytest

from src.exact_core.int_matrix import NEGATIVE_DEFINITE, IntMatrix
from src.plumbing_lattice.embedding import (
    EMBEDDING_FOUND,
    NO_EMBEDDING,
    SearchBudgetExceeded,
    donaldson_obstruction,
    embed_into_diagonal,
    search_order,
)
from src.plumbing_lattice.graphs import (
    Lattice,
    LatticeError,
    PlumbingGraph,
    build_W,
    intersection_matrix,
    leg_fraction,
    linear_plumbing,
    nr_obstruction_sum,
    seifert_leg_fractions,
    star_definiteness_sum,
    w_legs,
)
from src.surgery_calc.families import h_E, h_L


# ---------------------------------------------------------------------------
# Graphs and lattices
# ---------------------------------------------------------------------------

def test_graph_normalizes_edges():
    graph = PlumbingGraph((-2, -3, -2), ((1, 0), (2, 1), (0, 1)))
    assert graph.edges == ((0, 1), (1, 2))
    assert graph.is_tree()
    assert graph.degrees() == [1, 2, 1]


@pytest.mark.parametrize("edges", [((0, 0),), ((0, 3),), ((-1, 1),)])
def test_invalid_edges_raise(edges):
    with pytest.raises(LatticeError):
        PlumbingGraph((-2, -2, -2), edges)


def test_graph_json_round_trip():
    graph = build_W(3, 1)
    assert PlumbingGraph.from_dict(graph.to_dict()) == graph
    with pytest.raises(LatticeError):
        PlumbingGraph.from_dict({"weights": [-2]})


def test_lattice_requires_symmetric_gram():
    with pytest.raises(LatticeError):
        Lattice(IntMatrix([[-2, 1], [0, -2]]))


def test_build_w_shape():
    """Central -2, legs [-p], p(n+1) twos, (p-1) twos closed by -(n+1)."""
    graph = build_W(3, 1)
    assert graph.n_vertices == 3 * 3 + 2
    assert graph.weights[0] == -2
    assert w_legs(3, 1) == [[-3], [-2] * 6, [-2, -2, -2]]
    assert graph.is_tree()
    assert sorted(graph.degrees())[-1] == 3


def test_e8_case():
    """build_W(2, 1) is the E8 graph: rank 8, unimodular, negative definite."""
    lattice = intersection_matrix(build_W(2, 1))
    assert lattice.rank == 8
    assert abs(lattice.determinant()) == 1
    assert lattice.definiteness() == NEGATIVE_DEFINITE


@pytest.mark.parametrize("p,n", [(p, n) for p in range(2, 8) for n in range(1, 5)])
def test_w_is_negative_definite_with_determinant_h_e(p, n):
    lattice = intersection_matrix(build_W(p, n))
    assert lattice.rank == p * (n + 2) + 2
    assert lattice.definiteness() == NEGATIVE_DEFINITE
    assert abs(lattice.determinant()) == h_E(p, n)


def test_build_w_rejects_bad_parameters():
    with pytest.raises(LatticeError):
        build_W(1, 1)
    with pytest.raises(LatticeError):
        nr_obstruction_sum(2, 0)


# ---------------------------------------------------------------------------
# Definiteness sum
# ---------------------------------------------------------------------------

def test_leg_fractions():
    assert leg_fraction([-3]) == Fraction(1, 3)
    assert leg_fraction([-2, -2]) == Fraction(2, 3)
    with pytest.raises(LatticeError):
        leg_fraction([-1])


def test_nr_sum_at_2_1():
    """-2 + 2/3 + 1/2 + 4/5 = -1/30."""
    assert nr_obstruction_sum(2, 1) == Fraction(-1, 30)


def test_nr_sum_matches_star_sum_and_orders():
    """The closed form equals the leg sum of build_W and -h_E/h_L, always negative."""
    for p in range(2, 21):
        for n in range(1, 21):
            value = nr_obstruction_sum(p, n)
            assert value < 0
            assert value == Fraction(-h_E(p, n), h_L(p, n))
            assert value == star_definiteness_sum(-2, w_legs(p, n))
            assert len(seifert_leg_fractions(p, n)) == 3


# ---------------------------------------------------------------------------
# Diagonal embeddings
# ---------------------------------------------------------------------------

def test_search_order_prefers_heavy_then_branching_vertices():
    lattice = intersection_matrix(build_W(3, 1))
    order = search_order(lattice)
    assert order[0] == 1
    assert sorted(order) == list(range(lattice.rank))


def test_a4_embeds_one_dimension_up():
    """A chain of four -2 spheres sits in Z^5 (e_i - e_{i+1}) but not in Z^4."""
    lattice = intersection_matrix(linear_plumbing([-2, -2, -2, -2]))
    found = embed_into_diagonal(lattice, 5)
    assert found.verdict == EMBEDDING_FOUND
    assert found.embedding.verify(lattice)
    assert found.certificate.found
    assert embed_into_diagonal(lattice, 4).verdict == NO_EMBEDDING


def test_diagonal_lattice_embeds_in_its_own_rank():
    lattice = Lattice(IntMatrix([[-1, 0], [0, -1]]))
    result = embed_into_diagonal(lattice, 2)
    assert result.verdict == EMBEDDING_FOUND
    assert sorted(map(sorted, result.embedding.vectors)) == [[0, 1], [0, 1]]


def test_search_domain_errors():
    with pytest.raises(LatticeError):
        embed_into_diagonal(Lattice(IntMatrix([[2]])), 1)
    with pytest.raises(LatticeError):
        embed_into_diagonal(intersection_matrix(linear_plumbing([-2, -2])), 1)
    with pytest.raises(LatticeError):
        donaldson_obstruction(2, 1, margin=-1)


def test_e8_has_no_diagonal_embedding():
    """Certified at N = 8."""
    verdict = donaldson_obstruction(2, 1)
    assert verdict.verdict == NO_EMBEDDING
    assert verdict.embedding is None
    assert verdict.dimension == 8
    assert not verdict.certificate.found
    assert len(verdict.certificate.digest) == 64


def test_certificate_is_reproducible():
    first = donaldson_obstruction(2, 1)
    second = donaldson_obstruction(2, 1)
    assert first.certificate == second.certificate


def test_worker_pool_gives_the_same_certificate():
    serial = donaldson_obstruction(2, 1, workers=1)
    pooled = donaldson_obstruction(2, 1, workers=2)
    assert pooled.certificate == serial.certificate


def test_budget_exhaustion_is_not_a_verdict():
    with pytest.raises(SearchBudgetExceeded):
        donaldson_obstruction(2, 1, budget=5)


@pytest.mark.slow
@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (3, 2)])
@pytest.mark.parametrize("margin", [0, 2])
def test_no_embedding_for_small_families(p, n, margin):
    verdict = donaldson_obstruction(p, n, margin=margin)
    assert verdict.verdict == NO_EMBEDDING
