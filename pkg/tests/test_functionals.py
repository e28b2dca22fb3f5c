import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bohrlab.errors import DegenerateAreaError, DomainError
from bohrlab.functionals import (
    G_LAMBDA,
    G_RADIUS,
    AreaTerm,
    FTerm,
    FunctionalDescriptor,
    Refinement,
    area_odds,
    area_ratio,
    bohr_tail,
    eval_functional,
    evaluate_many,
    extremal_closed_form,
    g1_excess_poly,
    g2_excess_poly,
    norm_sq,
    refinement_A,
)
from bohrlab.series import AutomorphismParams, Variant, automorphism_series, blaschke_from_zeros, blaschke_sample
from bohrlab.theorems import REGISTRY


def auto(a, variant=Variant.MINUS, n=400):
    return automorphism_series(AutomorphismParams(a, variant), n)


NEG_Z = auto(0.0)  # f(z) = -z

CLASSICAL = FunctionalDescriptor(FTerm.ABS_A0, 0, 1)
D_F = FunctionalDescriptor(FTerm.ABS_F_P2, 2, 3, Refinement.A_F1, 3, AreaTerm.NONE, 0.0)


def test_bohr_tail_examples():
    assert bohr_tail(auto(0.5), 1 / 3, 0) == pytest.approx(0.8, abs=1e-14)
    assert bohr_tail(auto(0.5), 1 / 3, 1) == pytest.approx(0.3, abs=1e-14)
    assert bohr_tail(auto(0.5), 0.0, 1) == 0.0
    with pytest.raises(DomainError):
        bohr_tail(auto(0.5), 1.0, 0)


def test_norm_sq_examples():
    assert norm_sq(auto(0.5), 0.5, 1) == pytest.approx(0.5625 * 0.25 / 0.9375, abs=1e-15)
    assert norm_sq(auto(0.5), 0.5, 1) == pytest.approx(0.15, abs=1e-14)
    assert norm_sq(auto(0.5), 0.0, 1) == 0.0
    assert norm_sq(NEG_Z, 0.5, 1) == pytest.approx(0.25)
    assert norm_sq(NEG_Z, 0.5, 2) == 0.0
    with pytest.raises(DomainError):
        norm_sq(NEG_Z, 0.5, 3)


def test_refinement_examples():
    assert refinement_A(auto(0.5), 0.0) == 0.0
    expected = (1 / 1.5 + 0.5) * (0.5625 / 9) / (1 - 0.25 / 9)
    assert refinement_A(auto(0.5), 1 / 3, Refinement.A_F0) == pytest.approx(expected, abs=1e-15)
    assert expected == pytest.approx(0.075, abs=1e-12)
    deg1 = blaschke_from_zeros([0.0], 1.0, 20)
    assert refinement_A(deg1, 0.4, Refinement.A_F1) == 0.0


def test_area_examples():
    assert area_ratio(auto(0.5), 0.5) == pytest.approx(0.25 * 0.5625 / 0.9375**2, abs=1e-15)
    assert area_ratio(auto(0.5), 0.5) == pytest.approx(0.16, abs=1e-14)
    assert area_ratio(auto(0.5), 0.0) == 0.0
    assert area_ratio(NEG_Z, 0.6) == pytest.approx(0.36)
    assert area_odds(NEG_Z, 0.0) == 0.0
    assert area_odds(NEG_Z, 0.6) == pytest.approx(0.5625)
    assert area_odds(auto(0.5), 0.5) == pytest.approx(0.16 / 0.84, abs=1e-14)


def test_area_odds_degenerate():
    # f(z) = z^2 has S_r/pi = 2 r^4, which reaches 1 below r = 1
    s = blaschke_from_zeros([0.0, 0.0], 1.0, 10)
    with pytest.raises(DegenerateAreaError):
        area_odds(s, 0.9)


def test_descriptor_invariants():
    with pytest.raises(DomainError):
        FunctionalDescriptor(FTerm.ABS_F_P1, deriv_terms=2, tail_start=2)
    with pytest.raises(DomainError):
        FunctionalDescriptor(FTerm.ABS_F_P1, tail_start=2, refinement=Refinement.A_F1)
    with pytest.raises(DomainError):
        FunctionalDescriptor(lam=-1.0)
    assert "B_3(f,r)" in D_F.render() and "A(f1,r)" in D_F.render()


def test_classical_examples():
    v = eval_functional(CLASSICAL, auto(0.5), 1 / 3)
    assert v.total == pytest.approx(0.8, abs=1e-14)
    assert eval_functional(CLASSICAL, NEG_Z, 1 / 3).total == pytest.approx(1 / 3)


def test_df_descriptor_crosses_one_near_its_extremal_threshold():
    s = auto(0.99)
    assert eval_functional(D_F, s, -0.393727).total < 1
    assert eval_functional(D_F, s, -0.45).total > 1


@given(
    tid=st.sampled_from(sorted(REGISTRY)),
    degree=st.integers(1, 4),
    seed=st.integers(0, 5000),
    r=st.floats(0, 0.45),
    theta=st.floats(0, 6.3),
)
def test_parts_are_nonnegative_and_sum_to_total(tid, degree, seed, r, theta):
    s = blaschke_sample(degree, seed)
    v = eval_functional(REGISTRY[tid].descriptor, s, r * cmath.exp(1j * theta))
    assert all(p >= 0 for p in v.parts.values())
    assert abs(v.total - sum(v.parts.values())) <= 1e-14
    assert v.error_bound >= 0


def test_evaluate_many_agrees_with_single_calls():
    s = blaschke_sample(3, 9)
    ds = [t.descriptor for t in REGISTRY.values()]
    z = 0.25 * cmath.exp(0.4j)
    for d, v in zip(ds, evaluate_many(ds, s, z)):
        assert v.total == eval_functional(d, s, z).total


# -- extremal closed forms ---------------------------------------------------

GRID_A = np.linspace(0.0, 0.98, 10)
GRID_R = np.linspace(0.02, 0.6, 10)


@pytest.mark.parametrize("tid", ["bohr_classical", "D_f", "J_1", "G_1", "G_2"])
def test_closed_form_matches_direct_evaluation(tid):
    t = REGISTRY[tid]
    worst = 0.0
    for a in GRID_A:
        s = auto(a, t.extremal)
        for r in GRID_R:
            v = eval_functional(t.descriptor, s, t.extremal_sign * r)
            diff = abs(v.total - extremal_closed_form(tid, a, r))
            assert diff <= v.error_bound + 1e-12
            worst = max(worst, diff)
    assert worst <= 1e-10


@pytest.mark.parametrize("tid", ["G_1", "G_2"])
def test_polynomial_form_at_sharp_radius(tid):
    t = REGISTRY[tid]
    for a in np.linspace(0, 0.999, 25):
        direct = eval_functional(t.descriptor, auto(a, Variant.PLUS, 2000), G_RADIUS).total
        assert abs(direct - extremal_closed_form(tid, a, G_RADIUS)) <= 1e-10


def test_plus_and_minus_extremals_agree():
    for tid in ("D_f", "J_1", "J_2", "G_1"):
        d = REGISTRY[tid].descriptor
        for a in (0.3, 0.9):
            m = eval_functional(d, auto(a, Variant.MINUS), -0.3).total
            p = eval_functional(d, auto(a, Variant.PLUS), 0.3).total
            assert m == pytest.approx(p, abs=1e-13)


@pytest.mark.parametrize("tid", ["D_f", "J_1", "G_1", "G_2"])
def test_closed_form_at_origin_is_head_term(tid):
    for a in (0.0, 0.4, 0.8):
        head = a if tid in ("J_1", "G_1", "G_2") else a * a
        assert extremal_closed_form(tid, a, 0.0) == pytest.approx(head, abs=1e-15)


def test_g_correction_vanishes_as_a_tends_to_one():
    vals = [extremal_closed_form("G_1", a, G_RADIUS) for a in (0.9, 0.99, 0.999, 0.9999)]
    gaps = [abs(v - 1) for v in vals]
    assert gaps == sorted(gaps, reverse=True) and gaps[-1] < 1e-12


def test_excess_numerators_vanish_at_a_equal_one_for_the_sharp_weight():
    assert g1_excess_poly(1.0, G_LAMBDA) == pytest.approx(0.0, abs=1e-9)
    assert g2_excess_poly(1.0, G_LAMBDA) == pytest.approx(0.0, abs=1e-9)
    assert g1_excess_poly(1.0, 1.02 * G_LAMBDA) > 0


def test_unsupported_closed_form():
    with pytest.raises(NotImplementedError):
        extremal_closed_form("J_2", 0.5, 0.3)


# -- observed behaviour of f_a beyond the quoted radii ------------------------

@pytest.mark.parametrize("tid, threshold", [("D_f", 0.4243197378718129), ("J_1", 0.3223926615374355)])
def test_automorphism_stays_below_one_up_to_its_own_threshold(tid, threshold):
    t = REGISTRY[tid]
    R = t.radius()
    for a in (0.9, 0.99, 0.999, 0.9999):
        s = auto(a)
        assert eval_functional(t.descriptor, s, -1.05 * R).total < 1
        assert eval_functional(t.descriptor, s, -0.99 * threshold).total < 1
    assert eval_functional(t.descriptor, auto(0.999), -1.02 * threshold).total > 1
