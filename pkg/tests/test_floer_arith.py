# tests/test_floer_arith.py
"""
Pytest suite for src.floer_arith: spin^c labels, spin counts, the Chern
class reduction, degree shifts and the spin structures on -L.
"""

from fractions import Fraction

import pytest

from src.exact_core.int_matrix import IntMatrix
from src.floer_arith.degrees import (
    MINUS_X_COBORDISM,
    V_COBORDISM,
    CobordismData,
    c1_square,
    contact_d_correction,
    degree_collapse_check,
    degree_collapse_identity,
    degree_shift,
    quarter_shift,
    rank_identities,
    two_handle_data,
)
from src.floer_arith.spin_structures import (
    V_FRAMING,
    W_FRAMING,
    characteristic_sublinks,
    extends_over_handle,
    minus_l_spin_degrees,
)
from src.floer_arith.spinc import (
    FORCED_ZERO,
    UNDETERMINED,
    FloerArithmeticError,
    SpinCExtension,
    SpinCLabel,
    chern_class_reduction,
    spin_component_filter,
    spin_count,
    spin_labels,
)
from src.surgery_calc.families import family_presentation, h_E, h_L, h_S
from src.surgery_calc.homology import h1_order, presentation

GRID = [(p, n) for p in range(2, 10) for n in range(1, 6)]


# ---------------------------------------------------------------------------
# Spin^c labels
# ---------------------------------------------------------------------------

def test_spin_labels_are_self_conjugate():
    assert [label.c for label in spin_labels(7)] == [0]
    assert [label.c for label in spin_labels(84)] == [0, 42]
    assert all(label.conjugate() == label for label in spin_labels(84))


def test_label_range_is_checked():
    with pytest.raises(FloerArithmeticError):
        SpinCLabel(5, 5)
    with pytest.raises(FloerArithmeticError):
        SpinCLabel(0, 0)


def test_chern_residue_determines_label_for_odd_order():
    """For odd h, 2c mod h is a bijection on labels."""
    for residue in range(89):
        assert SpinCLabel.from_chern_residue(89, residue).chern_residue() == residue
    assert SpinCLabel.from_chern_residue(89, 1).c == 45
    with pytest.raises(FloerArithmeticError):
        SpinCLabel.from_chern_residue(84, 1)


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (3, 2), (5, 2)])
def test_spin_counts_of_s_e_l(p, n):
    """S and E carry one spin structure, L carries two."""
    counts = [spin_count(presentation(family_presentation(f, p, n))) for f in ("S", "E", "L")]
    assert counts == [1, 1, 2]


def test_spin_labels_match_spin_count(rng):
    """One spin label for odd |H1|, two for even, as spin_count finds on the same presentation."""
    for _ in range(25):
        p, n = int(rng.integers(2, 10)), int(rng.integers(1, 6))
        for family in ("S", "E", "L", "U"):
            link = family_presentation(family, p, n)
            h = h1_order(link)
            expected = 2 if h % 2 == 0 else 1
            assert len(spin_labels(h)) == spin_count(presentation(link)) == expected


# ---------------------------------------------------------------------------
# Spin component filter
# ---------------------------------------------------------------------------

def test_conjugate_pairs_cancel():
    """Only non-spin extensions in conjugate pairs: the component vanishes."""
    source, target = SpinCLabel(4, 0), SpinCLabel(1, 0)
    pair = [SpinCExtension(SpinCLabel(5, 1)), SpinCExtension(SpinCLabel(5, 4))]
    assert spin_component_filter(source, target, pair) == FORCED_ZERO
    assert spin_component_filter(source, target, []) == FORCED_ZERO


def _random_spin_label(rng):
    h = int(rng.integers(1, 40))
    labels = spin_labels(h)
    return labels[int(rng.integers(0, len(labels)))]


def _conjugate_paired_extensions(rng, h):
    extensions = []
    for _ in range(int(rng.integers(0, 6))):
        label = SpinCLabel(h, int(rng.integers(0, h)))
        if label.is_spin:
            continue
        extensions += [SpinCExtension(label), SpinCExtension(label.conjugate())]
    return [extensions[i] for i in rng.permutation(len(extensions))]


def test_conjugate_pairs_cancel_on_random_inputs(rng):
    """Non-spin extensions closed under conjugation always force zero; one spin extension does not."""
    for _ in range(300):
        source, target = _random_spin_label(rng), _random_spin_label(rng)
        h = int(rng.integers(3, 60))
        extensions = _conjugate_paired_extensions(rng, h)
        assert spin_component_filter(source, target, extensions) == FORCED_ZERO
        with_spin = extensions + [SpinCExtension(SpinCLabel(h, 0), spin=True)]
        assert spin_component_filter(source, target, with_spin) == UNDETERMINED


def test_spin_extension_leaves_component_undetermined():
    source, target = SpinCLabel(4, 2), SpinCLabel(1, 0)
    extensions = [SpinCExtension(SpinCLabel(5, 0), spin=True), SpinCExtension(SpinCLabel(5, 2)), SpinCExtension(SpinCLabel(5, 3))]
    assert spin_component_filter(source, target, extensions) == UNDETERMINED


def test_filter_rejects_bad_inputs():
    with pytest.raises(FloerArithmeticError):
        spin_component_filter(SpinCLabel(4, 1), SpinCLabel(1, 0), [])
    with pytest.raises(FloerArithmeticError):
        spin_component_filter(SpinCLabel(4, 0), SpinCLabel(1, 0), [SpinCExtension(SpinCLabel(5, 1))])
    with pytest.raises(FloerArithmeticError):
        SpinCExtension(SpinCLabel(5, 1), spin=True)


# ---------------------------------------------------------------------------
# Chern class
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p,n", [(p, n) for p in (3, 5, 7) for n in (1, 2, 3)])
def test_chern_class_reduces_to_generator(p, n):
    """c1 of the contact structure on S is mu_d, i.e. residue 1 mod h_S."""
    assert chern_class_reduction(p, n) == 1


def test_chern_class_needs_odd_p():
    with pytest.raises(FloerArithmeticError):
        chern_class_reduction(4, 1)


# ---------------------------------------------------------------------------
# Degrees
# ---------------------------------------------------------------------------

def test_quarter_shift_and_contact_correction():
    """A single negative 2-handle with c1^2 = 0 shifts by 1/4; the contact term adds 1/2."""
    assert quarter_shift() == Fraction(1, 4)
    data = two_handle_data(Fraction(-84, 89))
    assert contact_d_correction(data) == degree_shift(data) + Fraction(1, 2)
    assert degree_shift(CobordismData(sigma=0, chi=0, c1_square=-4)) == -1


@pytest.mark.parametrize("p,n", GRID)
def test_rank_identities_and_collapse(p, n):
    report = rank_identities(p, n)
    assert report.s_equals_e_plus_l and report.l_equals_e_plus_u
    assert report.h_map_vanishes and report.f_prime_vanishes
    assert degree_collapse_check(p, n)


def test_collapse_identity_is_exactly_the_rank_identity(rng):
    """The sandwich closes iff h_S = h_E + h_L."""
    for _ in range(1000):
        he, hl, hs = (int(x) for x in rng.integers(1, 60, size=3))
        assert degree_collapse_identity(he, hl, hs) == (hs == he + hl)
    with pytest.raises(FloerArithmeticError):
        degree_collapse_identity(1, 1, 0)


@pytest.mark.parametrize("k", [1, 3, 5])
@pytest.mark.parametrize("l", [1, 3, 5])
def test_c1_square_formulas(k, l):
    p, n = 3, 1
    assert c1_square(V_COBORDISM, k, p, n) == Fraction(-k * k * h_L(p, n), h_S(p, n))
    assert c1_square(MINUS_X_COBORDISM, l, p, n) == Fraction(-l * l * h_E(p, n), h_S(p, n))


def test_c1_squares_of_generators_add_to_minus_one():
    for p, n in GRID:
        assert c1_square(V_COBORDISM, 1, p, n) + c1_square(MINUS_X_COBORDISM, 1, p, n) == -1


def test_c1_square_rejects_even_multipliers_and_unknown_cobordisms():
    with pytest.raises(FloerArithmeticError):
        c1_square(V_COBORDISM, 2, 3, 1)
    with pytest.raises(FloerArithmeticError):
        c1_square("W", 1, 3, 1)


# ---------------------------------------------------------------------------
# Spin structures on -L
# ---------------------------------------------------------------------------

def test_characteristic_sublinks_of_small_forms():
    """[[-2]] has two characteristic sublinks; [[-1]] has one."""
    assert characteristic_sublinks(IntMatrix([[-2]])) == [(), (0,)]
    assert characteristic_sublinks(IntMatrix([[-1]])) == [(0,)]


def test_extension_parity():
    assert extends_over_handle((0,), [1, 0], V_FRAMING)
    assert not extends_over_handle((0,), [1, 0], W_FRAMING)
    assert extends_over_handle((), [1, 0], W_FRAMING)


def test_minus_l_spin_degrees_at_3_1():
    """tau_V has d = 7/4, tau_W has d = 3/4, so tau_E sits in degree 1."""
    result = minus_l_spin_degrees(3, 1)
    assert result.tau_V.d == Fraction(7, 4)
    assert result.tau_W.d == Fraction(3, 4)
    assert result.predicted_tau_E == 1
    assert result.tau_V.sublink != result.tau_W.sublink
