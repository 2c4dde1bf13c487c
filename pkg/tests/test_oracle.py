"""Independent numerical oracles and their agreement with the closed forms."""

import math

import numpy as np
import pytest

from dirac_tunneling import (
    BarrierSystem,
    dwell_integral,
    dwell_time,
    flux_profile,
    interface_matrix,
    kinematic_point,
    numeric_phase_time,
    phase_time_closed,
    region_coefficients,
    self_interference_delay,
    single_barrier_amplitudes,
    tm_solve,
    transfer_relation,
    transmission,
)
from dirac_tunneling.kinematics import RegimeError
from dirac_tunneling.oracle import (
    _dwell_integral_detail,
    default_flux_samples,
    random_evanescent_grid,
)

SYS_2A = BarrierSystem(V0=1.5, a=0.7, l=0.7)


def test_tm_solve_zero_width():
    s = BarrierSystem(V0=1.5, a=0.0, l=0.7)
    sol = tm_solve(1.8, s)
    assert sol.T == pytest.approx(1.0 + 0.0j, rel=1e-13)
    assert abs(sol.R) < 1e-13
    assert sol.C == pytest.approx(1.0 + 0.0j, rel=1e-13)
    assert abs(sol.D) < 1e-13


def test_tm_solve_matches_closed_forms(random_grid_small):
    g = random_grid_small
    worst = 0.0
    for i in range(0, len(g["E"]), 4):
        s = BarrierSystem(V0=g["V0"][i], a=g["a"][i], l=g["l"][i])
        num = tm_solve(g["E"][i], s)
        ref = region_coefficients(g["E"][i], s)
        for field in ("T", "R", "A", "B", "C", "D", "F", "G"):
            x, y = getattr(num, field), getattr(ref, field)
            scale = max(abs(y), 1e-300)
            worst = max(worst, abs(x - y) / scale)
    assert worst < 1e-10


def test_zero_gap_reduces_to_single_barrier():
    # l = 0 merges the two barriers into one of width 2a
    for a in (0.4, 1.1, 2.5):
        s = BarrierSystem(V0=1.5, a=a, l=0.0)
        T_double = tm_solve(1.8, s).T
        T_single, R_single = single_barrier_amplitudes(1.8, 2.0 * a, 1.5)
        assert abs(T_double - T_single) <= 1e-12 * abs(T_single)
        T_closed = transmission(1.8, s)
        assert abs(T_closed - T_single) <= 1e-12 * abs(T_single)
        assert abs(T_single) ** 2 + abs(R_single) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_numeric_phase_time_free_limit():
    # a = 0: the packet crosses the span at speed k/E
    s = BarrierSystem(V0=1.5, a=0.0, l=0.7)
    kp = kinematic_point(1.8, SYS_2A)
    assert numeric_phase_time(1.8, s) == pytest.approx(0.7 * 1.8 / kp.k, rel=1e-8)


@pytest.mark.parametrize(
    "E, V0, a, l",
    [(1.8, 1.5, 0.7, 0.7), (1.46, 2.19, 0.7, 0.7), (1.01, 0.018, 2.0, 0.7),
     (1.8, 1.5, 3.0, 5.0)],
)
def test_numeric_phase_time_matches_closed(E, V0, a, l):
    s = BarrierSystem(V0=V0, a=a, l=l)
    tn = numeric_phase_time(E, s)
    tc = phase_time_closed(E, s)
    assert abs(tn - tc) <= 1e-6 * abs(tc)


def test_numeric_phase_time_guards_stencil():
    # the finite-difference stencil must stay inside the evanescent window:
    # V0 - (E - m) = 1e-7 is smaller than the step 1e-6 E, so E + h leaves it
    s = BarrierSystem(V0=0.8 + 1e-7, a=0.7, l=0.7)
    with pytest.raises(RegimeError) as exc:
        numeric_phase_time(1.8, s)
    assert "stencil" in str(exc.value)


def test_dwell_integral_free_limit():
    # a = 0 leaves only the gap: tau_d = l E / k exactly
    s = BarrierSystem(V0=1.5, a=0.0, l=0.7)
    kp = kinematic_point(1.8, SYS_2A)
    assert dwell_integral(1.8, s) == pytest.approx(0.7 * 1.8 / kp.k, rel=1e-9)


@pytest.mark.parametrize(
    "E, V0, a, l",
    [(1.8, 1.5, 0.7, 0.7), (1.46, 2.19, 0.7, 0.7), (2.2, 1.9, 1.3, 2.4)],
)
def test_dwell_integral_matches_closed(E, V0, a, l):
    s = BarrierSystem(V0=V0, a=a, l=l)
    assert dwell_integral(E, s) == pytest.approx(dwell_time(E, s), rel=1e-7)


def test_dwell_integral_opaque():
    kp = kinematic_point(1.8, SYS_2A)
    s = BarrierSystem(V0=1.5, a=25.0 / kp.q, l=0.7)
    assert dwell_integral(1.8, s) == pytest.approx(1.0459527207369815, rel=1e-6)


def test_dwell_quadrature_converges():
    # halving the tolerance moves the value by less than the error estimate
    coarse, err_c = _dwell_integral_detail(1.8, SYS_2A, rtol=1e-7)
    fine, _ = _dwell_integral_detail(1.8, SYS_2A, rtol=1e-10)
    assert abs(coarse - fine) <= 10.0 * max(err_c, 1e-14 * abs(fine))


def test_flux_profile_constant():
    samples = flux_profile(1.8, SYS_2A, default_flux_samples(SYS_2A))
    J = np.array([s.J for s in samples])
    dens = np.array([s.psi_dag_psi for s in samples])
    kp = kinematic_point(1.8, SYS_2A)
    J_inc = 2.0 * kp.k / (1.8 + 1.0)
    assert (dens > 0.0).all()
    assert J.std() < 1e-10 * J_inc
    magT2 = abs(transmission(1.8, SYS_2A)) ** 2
    assert J.mean() == pytest.approx(J_inc * magT2, rel=1e-10)


def test_flux_profile_transparent_system():
    s = BarrierSystem(V0=1.5, a=0.0, l=0.7)
    kp = kinematic_point(1.8, SYS_2A)
    J_inc = 2.0 * kp.k / (1.8 + 1.0)
    for sample in flux_profile(1.8, s, np.linspace(-1.0, 2.0, 31)):
        assert sample.J == pytest.approx(J_inc, rel=1e-12)


def test_flux_collapses_with_opacity():
    # far side of an opaque pair: transmitted flux ~ e^{-4 q a}
    kp = kinematic_point(1.8, SYS_2A)
    a = 10.0 / kp.q  # q a = 10
    s = BarrierSystem(V0=1.5, a=a, l=0.7)
    J_inc = 2.0 * kp.k / (1.8 + 1.0)
    bound = 10.0 * math.exp(-4.0 * 10.0)
    for z in (a + 0.3, s.span + 1.0):
        (sample,) = flux_profile(1.8, s, [z])
        assert 0.0 < sample.J / J_inc < bound


def test_default_flux_samples_cover_all_regions():
    z = np.asarray(default_flux_samples(SYS_2A, per_region=10))
    assert (z < 0.0).any()
    assert ((0.0 < z) & (z < 0.7)).any()
    assert ((0.7 < z) & (z < 1.4)).any()
    assert ((1.4 < z) & (z < 2.1)).any()
    assert (z > 2.1).any()


def test_interface_matrix_determinant():
    kp = kinematic_point(1.8, SYS_2A)
    m = interface_matrix(1.8, SYS_2A)
    assert m.det == pytest.approx(1j / kp.alpha, rel=1e-14)


def test_transfer_relation_reproduces_unit_income():
    for a, l in [(0.7, 0.7), (1.5, 2.0), (2.5, 0.3)]:
        s = BarrierSystem(V0=1.5, a=a, l=l)
        inc, refl = transfer_relation(1.8, s)
        sol = tm_solve(1.8, s)
        assert inc == pytest.approx(1.0 + 0.0j, rel=1e-10)
        assert refl == pytest.approx(sol.R, rel=1e-9, abs=1e-12)


def test_random_grid_is_deterministic_and_in_window():
    g1 = random_evanescent_grid(64, seed=42)
    g2 = random_evanescent_grid(64, seed=42)
    for key in ("E", "V0", "a", "l"):
        assert (g1[key] == g2[key]).all()
    assert len(g1["E"]) == 64
    assert (g1["E"] > 1.0).all()
    assert (g1["V0"] > g1["E"] - 1.0).all()
    assert (g1["V0"] < g1["E"] + 1.0).all()
    assert (g1["a"] >= 0.0).all()
    assert (g1["l"] >= 0.0).all()


def test_resonant_interference_delay_vanishes():
    # at a |R| minimum both oracles agree tau_i ~ 0 and tau_p ~ tau_d
    from dirac_tunneling import find_resonances

    hits = find_resonances(BarrierSystem(V0=1.5, a=0.7, l=0.01), 1.8, (1.0, 1.4))
    assert hits
    l_res, absR, tau_p, tau_d = hits[0]
    s = BarrierSystem(V0=1.5, a=0.7, l=l_res)
    assert absR < 1e-6
    assert abs(self_interference_delay(1.8, s)) < 1e-6 * tau_p
    assert dwell_integral(1.8, s) == pytest.approx(tau_p, rel=1e-6)
