import math

import pytest

from bohrlab.functionals import G_LAMBDA, G_RADIUS, extremal_closed_form
from bohrlab.suites import equality_cases, extremal_value, lambda_optimality, run_bounds, run_verify, sharpness
from bohrlab.theorems import REGISTRY, sharp_theorems


def test_registry_radii_are_in_unit_interval():
    for t in REGISTRY.values():
        for a in (0.0, 0.5, 0.99):
            assert 0 < t.radius(a) < 1
    assert REGISTRY["D_f"].radius() == pytest.approx(0.393727, abs=5e-6)
    assert {t.id for t in sharp_theorems()} >= {"bohr_classical", "D_f", "J_1", "G_1", "G_2"}


def test_small_verify_run_is_clean_and_deterministic():
    a = run_verify(samples=8, seed=3, theorem_ids=["bohr_classical", "D_f", "G_2", "refined_sq"], steps=5, angles=2)
    b = run_verify(samples=8, seed=3, theorem_ids=["bohr_classical", "D_f", "G_2", "refined_sq"], steps=5, angles=2)
    assert a.ok and [c.max_value for c in a.cells] == [c.max_value for c in b.cells]
    assert all(c.evaluations == 16 for c in a.cells)


def test_classical_bohr_sharpness_example():
    # a + (1 - a^2) r / (1 - a r) at r = 0.35
    t = REGISTRY["bohr_classical"]
    for a in (0.9, 0.99, 0.999):
        v = extremal_value(t, a, 0.35).total
        assert v == pytest.approx(a + (1 - a * a) * 0.35 / (1 - a * 0.35), abs=1e-12)
        assert (v > 1) == (a > 0.9)
    res = sharpness(t)
    assert res.ok and res.first_exceeding_a == 0.99


def test_df_at_042_exceeds_for_a_near_one():
    assert extremal_closed_form("D_f", 0.999, 0.42) < 1 < extremal_closed_form("D_f", 0.999, 0.43)


def test_lambda_direction():
    for tid in ("G_1", "G_2"):
        assert not lambda_optimality(tid, 1.0).violated
        assert lambda_optimality(tid, 1.02).violated
        exact = extremal_value(REGISTRY[tid], 0.999, G_RADIUS, lam=G_LAMBDA).total
        assert exact < 1 and exact == pytest.approx(1, abs=1e-9)


def test_small_bounds_run():
    rep = run_bounds(samples=6, steps=4)
    assert rep.ok and rep.skipped == 1
    assert set(rep.counts) == {"coeff_bound", "sq_sum_bound", "area_bound", "area_complement", "tail_lemma", "schwarz_pick"}


def test_equality_cases_attained():
    slack = equality_cases()
    assert all(abs(v) <= 1e-12 for v in slack.values())
    assert math.isfinite(slack["schwarz_pick(rotation,k=1,z=0)"])
