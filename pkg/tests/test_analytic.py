"""Closed-form surrogates against hand evaluations and the integrator."""
import math
from dataclasses import replace

import numpy as np
import pytest

from sqbloch import (
    approx_phase,
    approx_report,
    approx_sigma_channel,
    integrate,
    invert_phase_for_g,
    make_squeeze,
    phase_shift,
    steady_rho_e1,
    steady_rho_ee,
)
from sqbloch.analytic import approx_loss_fraction
from sqbloch.observables import coherence_magnitude, fidelity
from conftest import TWO_PI, params


def test_phase_hand_evaluation_weak_drive():
    # at alpha = 10 saturation is negligible: theta ~ -g^2 (4/gamma) K / (2 Omega)
    p = params(alpha=10.0, r=0.0)
    hand = -p.g ** 2 * (4.0 / p.gamma) * 2.0 / (2.0 * p.Omega)
    assert hand == pytest.approx(-5.78e-3, rel=1e-3)
    assert approx_phase(p) == pytest.approx(hand, rel=1e-2)


def test_phase_k_factor_ratio_without_saturation():
    # small g keeps the phase in the linear regime where the ratio is exact
    tiny = params(alpha=1e-8, r=0.0, g_GHz=0.01)
    k0 = tiny.squeeze.k_factor
    th0 = approx_phase(tiny)
    sq1 = make_squeeze(1.0, math.pi / 2)
    th1 = approx_phase(replace(tiny, squeeze=sq1))
    assert th1 / th0 == pytest.approx(sq1.k_factor / k0, rel=1e-6)


def test_phase_scales_inversely_with_omega():
    p = params(alpha=10.0)
    th1 = approx_phase(p)
    th2 = approx_phase(replace(p, Omega=2.0 * p.Omega))
    assert abs(th1) / abs(th2) == pytest.approx(2.0, rel=0.05)


def test_phase_monotone_in_k_factor():
    tiny = params(alpha=1e-8)
    mags = [
        abs(approx_phase(replace(tiny, squeeze=make_squeeze(r, math.pi / 2))))
        for r in np.linspace(0.0, 2.0, 9)
    ]
    assert all(b > a for a, b in zip(mags, mags[1:]))


def test_phase_against_integrator(baseline_a, baseline_b, traj_a, traj_b):
    for p, traj in ((baseline_a, traj_a), (baseline_b, traj_b)):
        th_ode = phase_shift(traj)
        th_approx = approx_phase(p)
        assert abs(th_approx - th_ode) / abs(th_ode) < 0.02


def test_phase_against_integrator_strong_coupling():
    for g in (0.05, 0.15, 0.25):
        p = params(alpha=100.0, r=1.0, g_GHz=g, Gamma_GHz=1e-3)
        th_ode = phase_shift(integrate(p))
        assert abs(approx_phase(p) - th_ode) / abs(th_ode) < 0.05


def test_steady_rho_ee_limits_and_oracle(baseline_b, traj_b, baseline_a, traj_a):
    assert steady_rho_ee(params(g_GHz=0.0), 0.5) == 0.0
    assert steady_rho_ee(params(alpha=0.0), 0.5) == 0.0
    for p, traj in ((baseline_a, traj_a), (baseline_b, traj_b)):
        peak = steady_rho_ee(p, p.pulse.amplitude)
        assert peak < 0.01 * p.rho11_0 or p.alpha.real > 50
        assert peak == pytest.approx(traj.rho_ee_max, rel=0.3)


def test_steady_rho_e1_limits_and_oracle(baseline_a, traj_a):
    p0 = replace(params(alpha=10.0), Gamma=0.0)
    v = steady_rho_e1(p0, 0.5)
    assert v.imag == 0.0 and v.real > 0.0  # (Omega - i 0) with real drive
    assert steady_rho_e1(params(g_GHz=0.0), 0.5) == 0j
    mid = traj_a.times.size // 2
    s_mid = float(traj_a.pulse[mid])
    assert abs(steady_rho_e1(baseline_a, s_mid)) == pytest.approx(
        abs(traj_a.rho_e1[mid]), rel=0.3
    )


def test_sigma_channel_damping(baseline_a, report_a):
    _, damping = approx_sigma_channel(replace(baseline_a, Gamma=0.0))
    assert abs(abs(damping) - 1.0) < 1e-12

    _, none = approx_sigma_channel(params(g_GHz=0.0))
    assert none == 1.0 + 0j

    _, damp = approx_sigma_channel(baseline_a)
    f_r_from_damping = fidelity(abs(baseline_a.rho10_0) * abs(damp))
    assert abs(f_r_from_damping - report_a.F_r) < 1e-6


def test_sigma_channel_damping_bounded():
    rng = np.random.default_rng(9)
    for _ in range(50):
        p = params(
            alpha=rng.uniform(1, 150),
            r=rng.uniform(0, 1.5),
            Gamma_GHz=10 ** rng.uniform(-3, 0),
            g_GHz=rng.uniform(0.05, 0.3),
        )
        _, damp = approx_sigma_channel(p)
        assert 0.0 < abs(damp) <= 1.0


def test_loss_fraction_approx(baseline_a, report_a):
    assert approx_loss_fraction(baseline_a) == pytest.approx(
        report_a.loss_fraction, rel=0.05
    )


def test_approx_report_fields(baseline_b):
    rep = approx_report(baseline_b)
    assert rep.rho_ee_peak >= 0.0
    assert 0.0 < rep.sigma10_damping <= 1.0
    assert rep.theta_approx < 0.0
    rec = rep.to_record()
    assert set(rec) == {"rho_ee_peak", "theta_approx", "loss_approx", "sigma10_damping"}


def test_invert_phase_round_trip(baseline_b):
    # inversion is linear-theory exact; the arctan curvature leaves O(theta^2)
    for target in (-0.002, -0.008, -0.02):
        g = invert_phase_for_g(baseline_b, target)
        got = approx_phase(replace(baseline_b, g=g))
        assert got == pytest.approx(target, rel=2e-4)
        assert got == pytest.approx(target, rel=abs(target) ** 2)
