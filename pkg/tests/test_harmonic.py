import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bohrlab.errors import DomainError, InvalidMError, TableMismatchError
from bohrlab.harmonic import (
    FAMILIES,
    GEOMETRIC,
    M_MAX,
    PRINTED,
    TABLE_M,
    HarmonicCoefficients,
    bohr_sum_harmonic,
    check_tables,
    compare_tables,
    distance_lower,
    extremal_fM,
    generalized_phi_radius,
    growth_envelope,
    h_M_function,
    h_M_increasing,
    harmonic_coeff_bound,
    power_family,
    printed_ulp,
    reproduce_tables,
    sample_harmonic,
    sharpness_harmonic,
    solve_Rf,
)

# cells where the computed root disagrees with the printed one by more than a unit
KNOWN_MISMATCH = {("R2", 1.21), ("R*3", 0.431), ("R*3", 0.862), ("R*3", 1.21), ("R*3", 1.271), ("R*3", 1.289)}
VALID_M = (0.1, 0.431, 1.0, 1.29)


@pytest.fixture(scope="module")
def cells():
    return compare_tables()


def test_coefficient_bound_examples():
    fm = extremal_fM(0.7, 50)
    for n in (2, 3, 10, 50):
        rep = harmonic_coeff_bound(fm, n)
        assert rep.holds and rep.slack == 0.0
    trivial = HarmonicCoefficients(np.array([1, 0, 0]), np.zeros(3), 1.0)
    rep = harmonic_coeff_bound(trivial, 2)
    assert rep.rhs == 1.0 and rep.slack == 1.0 and rep.holds
    with pytest.raises(DomainError):
        harmonic_coeff_bound(trivial, 1)
    with pytest.raises(DomainError):
        HarmonicCoefficients(np.array([2.0, 0]), np.zeros(2), 1.0)
    with pytest.raises(DomainError):
        HarmonicCoefficients(np.array([1.0, 0]), np.array([0.1, 0]), 1.0)


@given(M=st.floats(0.01, 1.29), seed=st.integers(0, 10_000))
def test_samples_respect_coefficient_bound(M, seed):
    hc = sample_harmonic(M, 40, seed)
    assert all(harmonic_coeff_bound(hc, n).holds for n in range(2, 41))


def test_growth_envelope_examples():
    assert growth_envelope(1.0, 0.0) == (0.0, 0.0)
    lo, hi = growth_envelope(1.0, 0.5)
    assert hi == pytest.approx(0.5 + 2 * (0.5 * math.log(0.5) + 0.5), abs=1e-15)
    assert hi == pytest.approx(0.806853, abs=5e-7)
    n = np.arange(2, 201)
    assert hi == pytest.approx(0.5 + 2 * np.sum(0.5**n / (n * (n - 1))), abs=1e-12)
    assert lo == pytest.approx(0.5 + 2 * np.sum((-1.0) ** (n - 1) * 0.5**n / (n * (n - 1))), abs=1e-12)
    # lower envelope tends to the distance bound as r -> 1
    assert growth_envelope(0.8, 1 - 1e-9, check=False)[0] == pytest.approx(distance_lower(0.8), abs=1e-7)
    with pytest.raises(DomainError):
        growth_envelope(1.0, 1.0)


@pytest.mark.parametrize("r", [0.1, 0.5, 0.9, 0.99])
def test_growth_envelope_cross_check(r):
    lo, hi = growth_envelope(1.0, r, check=True)
    assert lo <= r <= hi


def test_distance_lower():
    assert distance_lower(M_MAX) == pytest.approx(0.0, abs=1e-15)
    assert distance_lower(1.0) == pytest.approx(0.227411, abs=5e-7)
    assert distance_lower(1e-12) == pytest.approx(1.0)
    assert M_MAX == pytest.approx(1.29435, abs=5e-6)


def test_bohr_sum_examples():
    fm = extremal_fM(0.431, 4000)
    assert bohr_sum_harmonic(fm, GEOMETRIC, 0.0) == 0.0
    assert bohr_sum_harmonic(extremal_fM(1.0), GEOMETRIC, 0.5) == pytest.approx(growth_envelope(1.0, 0.5)[1], abs=1e-14)
    r = 0.443
    v = bohr_sum_harmonic(fm, FAMILIES["R1"], r)
    assert v == pytest.approx(r - 2 * 0.431 * r * math.log(1 - r), abs=1e-12)
    assert v == pytest.approx(distance_lower(0.431), abs=2e-3)
    with pytest.raises(DomainError):
        bohr_sum_harmonic(fm, GEOMETRIC, 1.0)


@pytest.mark.parametrize("fam", sorted(FAMILIES) + ["geometric"])
def test_closed_forms_match_direct_summation(fam):
    phi = GEOMETRIC if fam == "geometric" else FAMILIES[fam]
    for r in np.linspace(0.0, 0.99, 100):
        direct, tail = phi.weighted_direct(float(r))
        assert tail < 1e-12
        closed = phi.weighted_sum(float(r)) if r > 0 else 0.0
        assert abs(closed - direct) <= 1e-10


def test_phi_values_nonnegative_and_phi0_one():
    n = np.arange(2, 50, dtype=float)
    for phi in list(FAMILIES.values()) + [GEOMETRIC]:
        assert phi.phi0(1.0) == 1.0
        for r in (0.0, 0.3, 0.99):
            assert np.all(phi.phi_n(n, r) >= 0)


def test_h_M_examples():
    for phi in FAMILIES.values():
        for M in VALID_M:
            assert h_M_function(phi, M, 0.0) == pytest.approx(-1 - 2 * M * (1 - math.log(4)))
            assert h_M_function(phi, M, 0.0) < 0 < h_M_function(phi, M, 1.0)
            assert h_M_increasing(phi, M)


def test_invalid_M():
    for M in (M_MAX + 1e-6, 2.0, 0.0, -1.0):
        with pytest.raises(InvalidMError):
            solve_Rf(FAMILIES["R1"], M)


def test_solve_Rf_examples():
    assert solve_Rf(FAMILIES["R1"], 0.431).root == pytest.approx(0.443, abs=5e-4)
    assert solve_Rf(FAMILIES["R*1"], 0.431).root == pytest.approx(0.404, abs=5e-4)
    # quoted as 0.277 +- 5e-4; the root is 0.27769, inside one unit of the third decimal
    r3 = solve_Rf(FAMILIES["R3"], 0.431, check_monotone=True).root
    assert r3 == pytest.approx(0.27769, abs=5e-6)
    assert abs(r3 - 0.277) <= 1e-3


def test_radius_decreasing_in_M_and_family_ordering():
    table = {(row.family, row.M): row.radius for row in reproduce_tables()}
    for fam in FAMILIES:
        radii = [table[(fam, M)] for M in TABLE_M]
        assert all(0 < x < 1 for x in radii)
        assert all(x > y for x, y in zip(radii, radii[1:]))
    for M in TABLE_M:
        assert table[("R1", M)] >= table[("R2", M)] >= table[("R3", M)]
        assert table[("R*1", M)] >= table[("R*2", M)] >= table[("R*3", M)]


def test_geometric_basis_recovers_distance_form_radius():
    # for phi_n = r^n the Bohr sum of f_M is the upper growth envelope
    for M in VALID_M:
        r = solve_Rf(GEOMETRIC, M).root
        assert growth_envelope(M, r)[1] == pytest.approx(distance_lower(M), abs=1e-12)


@pytest.mark.parametrize("fam", sorted(FAMILIES))
def test_generic_samples_below_distance_bound(fam):
    phi = FAMILIES[fam]
    for M in VALID_M:
        r = solve_Rf(phi, M).root
        for seed in range(5):
            assert bohr_sum_harmonic(sample_harmonic(M, 2000, seed), phi, r) < distance_lower(M)


def test_sharpness_harmonic():
    assert sharpness_harmonic(GEOMETRIC, 1.0, 0.05)
    for fam, phi in FAMILIES.items():
        for M in TABLE_M:
            assert sharpness_harmonic(phi, M, 0.02), (fam, M)
    with pytest.raises(DomainError):
        sharpness_harmonic(GEOMETRIC, 1.0, 0.0)
    # continuity: at the root itself the extremal sum equals the distance bound
    r = solve_Rf(FAMILIES["R1"], 1.0).root
    assert bohr_sum_harmonic(extremal_fM(1.0, 20000), FAMILIES["R1"], r) == pytest.approx(distance_lower(1.0), abs=1e-9)


def test_generalized_phi_radius():
    assert generalized_phi_radius(GEOMETRIC, 2.0).root == pytest.approx(0.5, abs=1e-10)
    assert generalized_phi_radius(GEOMETRIC, 1.0).root == pytest.approx(1 / 3, abs=1e-10)
    assert generalized_phi_radius(FAMILIES["R1"], 2.0).root == pytest.approx((3 - math.sqrt(5)) / 2, abs=1e-10)
    with pytest.raises(DomainError):
        generalized_phi_radius(GEOMETRIC, 3.0)


def test_generalized_phi_radius_matches_direct_series():
    phi = power_family(0.5, 1)
    closed = generalized_phi_radius(phi, 1.5).root
    x = closed
    n = np.arange(1, 5000, dtype=float)
    assert 1.0 == pytest.approx((2 / 1.5) * np.sum((n + 0.5) * x**n), abs=1e-9)


def test_printed_ulp():
    assert printed_ulp("0.443") == pytest.approx(1e-3)
    assert printed_ulp("0.0040") == pytest.approx(1e-4)
    assert printed_ulp("0.000015") == pytest.approx(1e-6)


def test_table_shape_and_determinism(cells, monkeypatch):
    assert len(cells) == 54 and sum(len(v) for v in PRINTED.values()) == 54
    monkeypatch.setenv("BOHRLAB_THREADS", "4")
    assert [r.radius for r in reproduce_tables()] == [c.row.radius for c in cells]


def test_table_spec_examples(cells):
    by = {(c.family, c.M): c for c in cells}
    assert by[("R2", 0.862)].ok and by[("R2", 0.862)].printed == "0.189"
    assert by[("R1", 1.29433)].ok and by[("R1", 1.29433)].printed == "0.000015"
    assert by[("R1", 0.431)].ok


def test_table_mismatches_are_exactly_the_known_cells(cells):
    bad = {(c.family, c.M) for c in cells if not c.ok}
    assert bad == KNOWN_MISMATCH
    with pytest.raises(TableMismatchError):
        check_tables(cells)
