# tests/test_seifert_slopes.py
"""
Pytest suite for src.seifert_slopes: gluing matrices, vertical, critical and
boundary slopes, twisting bounds, and the sign-vector enumeration.
"""

from fractions import Fraction

import pytest

from src.exact_core.int_matrix import determinant
from src.exact_core.rational import INFINITY
from src.seifert_slopes import sign_vectors
from src.seifert_slopes.sign_vectors import (
    C1_TORUS,
    C2_TORUS,
    C3_TORUS,
    FILTER_ORDER,
    SIGN_FLIP,
    SignVector,
    all_sign_vectors,
    check_survivor_conjecture,
    enumerate_candidates,
    filter_histogram,
    is_overtwisted_vector,
    survivor_count_formula,
    upper_bound,
)
from src.seifert_slopes.slopes import (
    NORMALIZED_TWIST_STATE,
    SlopeError,
    TwistState,
    boundary_slopes,
    critical_slopes,
    first_column_ratio,
    gluing_matrices,
    is_critical_slope,
    seifert_triple,
    slopes,
    twist_number_bounds,
    twist_thresholds,
    vector_slope,
    vertical_slopes,
)

GRID = [(p, n) for p in range(2, 8) for n in range(1, 5)]


# ---------------------------------------------------------------------------
# Gluing matrices and slopes
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p,n", GRID)
def test_gluing_matrices_are_unimodular(p, n):
    """Each A_i has determinant 1."""
    assert all(determinant(a) == 1 for a in gluing_matrices(p, n))


@pytest.mark.parametrize("p,n", GRID)
def test_first_column_ratios_are_the_leg_coefficients(p, n):
    """a_11 / a_21 of A_i is the i-th surgery coefficient of the Seifert triple."""
    ratios = tuple(first_column_ratio(a) for a in gluing_matrices(p, n))
    assert ratios == seifert_triple(p, n).surgery_coefficients()
    assert ratios[1] == Fraction(-(p * n + 1), n)


def test_slopes_at_3_1():
    """v = (3, -4, -7) and c = (1/3, -1/4, -1/7)."""
    assert slopes(3, 1) == (3, -4, -7, Fraction(1, 3), Fraction(-1, 4), Fraction(-1, 7))


@pytest.mark.parametrize("p,n", GRID)
def test_slope_closed_forms(p, n):
    """Vertical and critical slopes follow their closed forms on the grid."""
    assert vertical_slopes(p, n) == (
        p,
        Fraction(-(p * n + 1), p * n - p + 1),
        -(p * (n + 1) + 1),
    )
    assert critical_slopes(p, n) == (
        Fraction(1, p),
        Fraction(-n, p * n + 1),
        Fraction(-1, p * (n + 1) + 1),
    )


def test_seifert_triple_leg_coefficients():
    """The surgery coefficients are -1/a, -1/b, -1/c of the Seifert triple."""
    triple = seifert_triple(3, 2)
    assert triple.surgery_coefficients() == (3, Fraction(-7, 2), -10)


def test_boundary_slopes_at_normalized_state():
    """Twisting numbers (0, -1, -1) give boundary slopes (0, -1/p, -1/(p(n+1)))."""
    assert NORMALIZED_TWIST_STATE.as_tuple() == (0, -1, -1)
    assert boundary_slopes(3, 1, NORMALIZED_TWIST_STATE) == (0, Fraction(-1, 3), Fraction(-1, 6))


def test_vector_slope_of_a_vertical_vector_is_infinite():
    """(0, y) has slope INFINITY; (x, 0) has slope 0."""
    assert vector_slope(0, 1) is INFINITY
    assert vector_slope(-1, 0) == 0


def test_boundary_slopes_follow_twisting_numbers():
    """Raising m_1 from 0 to 1 moves b_1 from 0 to 1/(p - 1)."""
    assert boundary_slopes(3, 1, TwistState(1, -1, -1))[0] == Fraction(1, 2)


def test_twist_thresholds_and_bounds():
    """Bypasses stop at the floors of the thresholds, which is (0, -1, -1)."""
    assert twist_thresholds(3, 1) == (Fraction(1, 3), Fraction(-1, 4), Fraction(-1, 7))
    for p, n in GRID:
        assert twist_number_bounds(p, n) == NORMALIZED_TWIST_STATE


def test_is_critical_slope():
    assert is_critical_slope(1, Fraction(1, 3), 3, 1)
    assert not is_critical_slope(2, Fraction(1, 3), 3, 1)
    with pytest.raises(SlopeError):
        is_critical_slope(4, Fraction(1, 3), 3, 1)


@pytest.mark.parametrize("p,n", [(1, 1), (2, 0), (True, 1), (2.0, 1)])
def test_bad_parameters_raise(p, n):
    with pytest.raises(SlopeError):
        slopes(p, n)


# ---------------------------------------------------------------------------
# Sign vectors
# ---------------------------------------------------------------------------

def test_survivors_at_small_parameters():
    """Known survivor lists; p = 2 leaves nothing."""
    assert [q.as_tuple() for q in enumerate_candidates(3, 1)] == [(0, 1, 6), (1, 2, 0)]
    assert [q.as_tuple() for q in enumerate_candidates(3, 2)] == [(0, 1, 9), (1, 2, 0)]
    for n in range(1, 5):
        assert enumerate_candidates(2, n) == []


def test_filters_fire_in_order():
    """Each vector is attributed to the first filter that kills it."""
    assert FILTER_ORDER == (C1_TORUS, C2_TORUS, C3_TORUS, SIGN_FLIP)
    # (0, 0, 0) also matches C2_TORUS and C3_TORUS
    assert is_overtwisted_vector(SignVector(0, 0, 0), 3, 1) == C1_TORUS
    assert is_overtwisted_vector(SignVector(0, 2, 1), 3, 1) == C2_TORUS
    assert is_overtwisted_vector(SignVector(0, 0, 5), 3, 1) == C3_TORUS
    assert is_overtwisted_vector(SignVector(0, 1, 5), 3, 1) == SIGN_FLIP
    assert is_overtwisted_vector(SignVector(1, 2, 0), 3, 1) is None


def test_filter_names_are_reported_verbatim():
    """(0, 0, q3) with q3 > pn reaches "stop"; (0, 1, pn + 2) is "page28"."""
    assert FILTER_ORDER == ("potatos", "box", "stop", "page28")
    assert is_overtwisted_vector(SignVector(0, 0, 6), 3, 1) == "stop"
    assert is_overtwisted_vector(SignVector(0, 0, 2), 3, 1) == "potatos"
    assert is_overtwisted_vector(SignVector(0, 1, 5), 3, 1) == "page28"
    assert set(filter_histogram(3, 1)) == {"potatos", "box", "stop", "page28", "survivor"}


def test_out_of_range_vector_raises():
    with pytest.raises(SlopeError):
        is_overtwisted_vector(SignVector(2, 0, 0), 3, 1)
    with pytest.raises(SlopeError):
        is_overtwisted_vector(SignVector(0, 4, 0), 3, 1)


@pytest.mark.parametrize("p,n", GRID)
def test_histogram_partitions_every_vector(p, n):
    """The per-filter counts add up to 2 (p + 1) (p (n + 1) + 1)."""
    histogram = filter_histogram(p, n)
    assert sum(histogram.values()) == 2 * (p + 1) * (p * (n + 1) + 1)
    assert sum(1 for _ in all_sign_vectors(p, n)) == sum(histogram.values())
    assert histogram["survivor"] == len(enumerate_candidates(p, n))


@pytest.mark.parametrize("p,n", GRID)
def test_survivor_count_and_bound(p, n):
    """|survivors| = max{p(p-1) - 4, 0} and the bound doubles it."""
    assert len(enumerate_candidates(p, n)) == max(p * (p - 1) - 4, 0)
    assert upper_bound(p, n) == 2 * survivor_count_formula(p)


def test_survivor_conjecture_holds_on_grid(recwarn):
    assert check_survivor_conjecture(range(2, 8), range(1, 5)) == []
    assert not [w for w in recwarn if issubclass(w.category, RuntimeWarning)]


def test_survivor_conjecture_warns_on_mismatch(monkeypatch):
    """A mismatch is reported once through warnings and returned, never raised."""
    monkeypatch.setattr(sign_vectors, "survivor_count_formula", lambda p: -1)
    with pytest.warns(RuntimeWarning):
        counterexamples = check_survivor_conjecture([3], [1, 2])
    assert counterexamples == [(3, 1, 2), (3, 2, 2)]
