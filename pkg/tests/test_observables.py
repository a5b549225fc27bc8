"""Report-level observables: phase, coherence, fidelity, loss bookkeeping."""
import json
import math

import pytest

from sqbloch import (
    AnsatzBreakdown,
    RunReport,
    coherence_magnitude,
    distinguishability,
    fidelity,
    integrate,
    loss_consistency,
    normalized_fidelity,
    phase_shift,
)
from conftest import params


def test_fidelity_formula():
    assert fidelity(0.5) == 1.0
    assert fidelity(0.0) == 0.5
    assert fidelity(0.4997) == pytest.approx(0.9997, abs=1e-12)
    with pytest.raises(ValueError):
        fidelity(-0.1)
    # monotone
    xs = [0.0, 0.1, 0.3, 0.5]
    fs = [fidelity(x) for x in xs]
    assert fs == sorted(fs)


def test_phase_shift_trivial_cases():
    traj = integrate(params(g_GHz=0.0, alpha=5.0))
    assert phase_shift(traj) == 0.0
    with pytest.raises(ValueError):
        phase_shift(integrate(params(g_GHz=0.0, alpha=0.0)))


def test_coherence_magnitude_g_zero():
    traj = integrate(params(g_GHz=0.0))
    assert coherence_magnitude(traj) == pytest.approx(0.5, abs=1e-15)


def test_coherence_magnitude_baselines(traj_b, ref_b):
    assert coherence_magnitude(traj_b) == pytest.approx(0.4997, abs=3e-4)
    assert coherence_magnitude(ref_b) == pytest.approx(0.5, abs=1e-6)


def test_coherence_overflow_guard():
    # strong squeeze at large alpha pushes the overlap exponent past overflow
    p = params(alpha=300.0, r=2.5, g_GHz=0.1)
    traj = integrate(p)
    with pytest.raises(AnsatzBreakdown):
        coherence_magnitude(traj)


def test_distinguishability(traj_b):
    assert distinguishability(integrate(params(g_GHz=0.0))) == 0.0
    d = distinguishability(traj_b)
    th = phase_shift(traj_b)
    assert d == pytest.approx(abs(traj_b.alpha_t[-1]) * math.sin(th), rel=1e-12)
    assert d == pytest.approx(100.0 * math.sin(-0.01353), rel=0.02)


def test_loss_consistency(traj_b):
    assert loss_consistency(integrate(params(g_GHz=0.0))) == 0.0
    assert loss_consistency(traj_b) < 0.05
    # lossless run reports only the unitarity residual
    res = loss_consistency(integrate(params(alpha=10.0, Gamma_GHz=0.0)))
    assert res < 1e-10


def test_normalized_fidelity_baseline_a(report_a):
    assert report_a.F == pytest.approx(0.999997, abs=2e-6)
    assert report_a.F == report_a.F_r / report_a.F_i
    assert report_a.loss_fraction == pytest.approx(5.8e-8, rel=0.5)


def test_normalized_fidelity_gamma_zero_is_unity():
    rep = normalized_fidelity(params(alpha=10.0, Gamma_GHz=0.0))
    assert rep.F == 1.0


def test_normalized_fidelity_no_light():
    rep = normalized_fidelity(params(alpha=0.0))
    assert rep.theta == 0.0
    assert rep.d == 0.0
    assert rep.loss_fraction == 0.0
    assert rep.F == 1.0


def test_report_record_round_trip(report_b):
    rec = report_b.to_record()
    back = RunReport.from_record(rec)
    assert back == report_b
    # through JSON text as well
    rec2 = json.loads(json.dumps(rec))
    assert RunReport.from_record(rec2) == report_b


def test_report_validation():
    with pytest.raises(ValueError):
        RunReport(
            theta=0.0,
            alpha_final=1 + 0j,
            loss_fraction=0.0,
            d=0.0,
            rho10_mag=0.5,
            F_r=1.1,
            F_i=1.0,
            F=1.1,
            rho_ee_max=0.0,
            loss_consistency_rel=0.0,
        )
    with pytest.raises(ValueError):
        RunReport(
            theta=0.0,
            alpha_final=1 + 0j,
            loss_fraction=0.0,
            d=0.0,
            rho10_mag=0.5,
            F_r=0.9,
            F_i=1.0,
            F=0.8,  # not F_r / F_i
            rho_ee_max=0.0,
            loss_consistency_rel=0.0,
        )
