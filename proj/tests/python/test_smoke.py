import cmath
import math

import numpy as np
import pytest

import decolab as dl


def test_z_factor_matches_dense_reduced_state():
    bath = dl.sample_bath(4, "uniform", 0.5, 1.5, seed=7)
    system = dl.QubitAmplitudes.normalized(0.6, 0.8j)
    rho = dl.zurek.reduced_density(system, bath, 0.9)
    z = dl.zurek.z_factor(bath, 0.9).to_complex()
    assert rho.shape == (2, 2)
    assert abs(rho[0, 1] - system.a * system.b.conjugate() * z) < 1e-12
    assert abs(np.trace(rho) - 1) < 1e-12


def test_log_product_survives_underflow():
    z = dl.log_product([0.5] * 5000)
    assert z.log10_abs() == pytest.approx(5000 * math.log10(0.5), rel=1e-12)
    assert abs(z) == 0.0


def test_single_pass_closed_agrees_with_rk4():
    p = dl.cavity.PassParams(f=0.3, B=1.0, gamma1=2.0, gamma2=0.5, tau=1.1)
    system = dl.QubitAmplitudes.normalized(1, 1)
    spin = dl.BathSpin(1 / math.sqrt(2), 1j / math.sqrt(2), 0.3)
    closed = dl.cavity.single_pass_closed(system, spin, p)
    numeric = dl.cavity.single_pass_numeric(system, spin, p, 4000)
    for name in "RTUV":
        assert abs(getattr(closed, name) - getattr(numeric, name)) < 1e-9
    assert closed.norm2() == pytest.approx(1.0, abs=1e-12)


def test_revival_killed_threshold():
    ch = dl.realclock.ClockChannel()
    n_star = dl.realclock.critical_particle_count(1e9, ch, 400)
    assert n_star == 52
    assert dl.realclock.revival_killed(n_star, 1e9, ch).killed
    assert not dl.realclock.revival_killed(n_star - 1, 1e9, ch).killed


def test_damping_factor_is_bounded():
    ch = dl.realclock.ClockChannel()
    assert dl.realclock.damping_factor(0.0, 1.0, ch) == 1.0
    assert 0.0 < dl.realclock.damping_factor(1e30, 1.0, ch) < 1.0


def test_nucleon_report_fails_overall():
    s = dl.feasibility.make_scenario("nucleon", 100000)
    report = dl.feasibility.full_report(s, 100000)
    assert not report.overall
    assert report.find("decoherence_bound").passed
    assert not report.find("mass_moment").passed


def test_k_exponent_classification():
    assert dl.despagnat.collapse_distinguishable(0.5) == "distinguishable"
    with pytest.raises(dl.ParameterError):
        dl.despagnat.collapse_distinguishable(-1.0)


def test_undecidability_margin_closes():
    state = dl.undecidability.three_spin_event_state(1 / math.sqrt(2), 1 / math.sqrt(2))
    open_margin, open_event = dl.undecidability.margin(state, 1.0, 0.0)
    closed_margin, closed_event = dl.undecidability.margin(state, 1.0, float("inf"))
    assert open_margin > closed_margin
    assert closed_event and not open_event


def test_dense_capacity_is_enforced():
    bath = dl.sample_bath(13, "fixed", 1.0, seed=1)
    with pytest.raises(dl.CapacityError):
        dl.oracle.dense_from_product(dl.QubitAmplitudes(1, 0), bath)


def test_bad_parameters_raise_value_error():
    with pytest.raises(ValueError):
        dl.cavity.PassParams(f=-1.0, B=1.0, gamma1=1.0, gamma2=1.0, tau=1.0)
    with pytest.raises(ValueError):
        dl.QubitAmplitudes(1, 1)
