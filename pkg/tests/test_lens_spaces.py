# tests/test_lens_spaces.py
"""
Tests for d-invariants of lens spaces: the closed recursion, its spin^c
labelling and the plumbing oracle it is checked against.
"""

import math
from fractions import Fraction

import pytest

from src.exact_core.int_matrix import IntMatrix
from src.floer_arith.lens_spaces import (
    LensSpace,
    d_connected_sum,
    d_invariant_lens,
    labelled_oracle_values,
    oracle_values,
    plumbing_d_invariants,
    recursion_matches_oracle,
    recursion_values,
)
from src.floer_arith.spinc import FloerArithmeticError, SpinCLabel


def _lens_spaces(max_p):
    for p in range(2, max_p + 1):
        for q in range(1, p):
            if math.gcd(p, q) == 1:
                yield LensSpace(p, q)


# ---------------------------------------------------------------------------
# Recursion
# ---------------------------------------------------------------------------

def test_small_lens_space_values():
    """L(2,1), L(3,1) and L(4,1) by hand."""
    assert sorted(recursion_values(LensSpace(2, 1))) == [Fraction(-1, 4), Fraction(1, 4)]
    assert sorted(recursion_values(LensSpace(3, 1))) == [Fraction(-1, 2), Fraction(1, 6), Fraction(1, 6)]
    assert recursion_values(LensSpace(4, 1)) == [Fraction(-3, 4), Fraction(0), Fraction(1, 4), Fraction(0)]


def test_spin_labels_of_small_lens_spaces():
    """Spin labels are c = 0 and, for even p, c = p/2."""
    l31 = LensSpace(3, 1)
    assert [label.c for label in l31.spin_labels()] == [0]
    assert d_invariant_lens(l31, SpinCLabel(3, 0)) == Fraction(-1, 2)
    l32 = LensSpace(3, 2)
    assert d_invariant_lens(l32, SpinCLabel(3, 0)) == Fraction(1, 2)
    l41 = LensSpace(4, 1)
    assert [label.c for label in l41.spin_labels()] == [0, 2]
    assert d_invariant_lens(l41, SpinCLabel(4, 2)) == Fraction(1, 4)


def test_three_sphere_has_d_zero():
    s3 = LensSpace(1, 0)
    assert recursion_values(s3) == [Fraction(0)]
    assert oracle_values(s3) == [Fraction(0)]


@pytest.mark.parametrize("p,q", [(0, 1), (4, 2), (3, 3), (5, 0), (1, 1)])
def test_invalid_lens_spaces_raise(p, q):
    with pytest.raises(FloerArithmeticError):
        LensSpace(p, q)


def test_label_from_another_group_raises():
    with pytest.raises(FloerArithmeticError):
        d_invariant_lens(LensSpace(5, 2), SpinCLabel(3, 1))


def test_conjugation_symmetry():
    """d(c) == d(-c) for every lens space with p <= 50."""
    for lens in _lens_spaces(50):
        for label in lens.labels():
            assert d_invariant_lens(lens, label) == d_invariant_lens(lens, label.conjugate())


def test_orientation_reversal():
    """-L(p, q) negates every value, and L(p, p - q) = -L(p, q) as multisets."""
    for lens in _lens_spaces(50):
        values = recursion_values(lens)
        assert recursion_values(lens.reverse()) == [-v for v in values]
        mirror = LensSpace(lens.p, lens.p - lens.q)
        assert sorted(recursion_values(mirror)) == sorted(-v for v in values)


def test_connected_sum_adds():
    summands = [(LensSpace(3, 1), SpinCLabel(3, 0)), (LensSpace(2, 1, -1), SpinCLabel(2, 1))]
    assert d_connected_sum(summands) == Fraction(-1, 2) - Fraction(1, 4)
    assert d_connected_sum([]) == 0


# ---------------------------------------------------------------------------
# Plumbing oracle
# ---------------------------------------------------------------------------

def test_oracle_on_a_single_vertex():
    """The -2 sphere bounds L(2, 1): values {1/4, -1/4} keyed by class."""
    values = plumbing_d_invariants(IntMatrix([[-2]]))
    assert sorted(values.values()) == [Fraction(-1, 4), Fraction(1, 4)]


def test_oracle_rejects_degenerate_forms():
    with pytest.raises(FloerArithmeticError):
        plumbing_d_invariants(IntMatrix([[-1, 1], [1, -1]]))


def test_recursion_matches_oracle_up_to_12():
    """Every label agrees for every coprime 1 <= q < p <= 12, in both orientations."""
    lenses = list(_lens_spaces(12))
    assert recursion_matches_oracle(lenses) == []
    assert recursion_matches_oracle([lens.reverse() for lens in lenses]) == []


def test_oracle_labelling_of_l41_by_hand():
    """On the -4 sphere, c = 0 is the class of K = 4 and c = 2 the class of K = 0."""
    assert [Fraction(-3, 4), Fraction(0), Fraction(1, 4), Fraction(0)] in labelled_oracle_values(LensSpace(4, 1))


@pytest.mark.parametrize("lens", list(_lens_spaces(12)), ids=str)
def test_recursion_agrees_with_oracle_on_every_label(lens):
    """Label c of the recursion equals the oracle class of K_spin + 2c e_end."""
    assert recursion_values(lens) in labelled_oracle_values(lens)
    assert recursion_values(lens.reverse()) in labelled_oracle_values(lens.reverse())


def test_relabelled_recursion_is_rejected():
    """Swapping two labels keeps the multiset but breaks label-wise agreement."""
    values = recursion_values(LensSpace(5, 1))
    assert values == [Fraction(-1), Fraction(-1, 5), Fraction(1, 5), Fraction(1, 5), Fraction(-1, 5)]
    swapped = [values[1], values[0]] + values[2:]
    assert sorted(swapped) == sorted(oracle_values(LensSpace(5, 1)))
    assert swapped not in labelled_oracle_values(LensSpace(5, 1))
