import math

import pytest

from sqbloch import (
    IntegratorSettings,
    SystemParams,
    integrate,
    make_squeeze,
    normalized_fidelity,
    reference_run,
)

TWO_PI = 2.0 * math.pi


def params(
    alpha=10.0,
    r=0.0,
    Gamma_GHz=1e-3,
    g_GHz=0.17,
    kappa_GHz=0.2,
    gamma_GHz=0.2,
    sigma=3.0,
    Omega_GHz=100.0,
    phi=math.pi / 2.0,
    rho11_0=0.5,
    rho10_0=0.5,
):
    return SystemParams(
        g=TWO_PI * g_GHz,
        Gamma=TWO_PI * Gamma_GHz,
        Omega=TWO_PI * Omega_GHz,
        kappa=TWO_PI * kappa_GHz,
        gamma=TWO_PI * gamma_GHz,
        sigma=sigma,
        alpha=complex(alpha),
        squeeze=make_squeeze(r, phi),
        rho00_0=1.0 - rho11_0,
        rho11_0=rho11_0,
        rho10_0=complex(rho10_0),
    )


@pytest.fixture(scope="session")
def baseline_a():
    """alpha=10 coherent pulse at Gamma/2pi = 1 MHz."""
    return params(alpha=10.0, r=0.0, Gamma_GHz=1e-3)


@pytest.fixture(scope="session")
def baseline_b():
    """alpha=100 squeezed pulse (r=1) at Gamma/2pi = 1 MHz."""
    return params(alpha=100.0, r=1.0, Gamma_GHz=1e-3)


@pytest.fixture(scope="session")
def traj_a(baseline_a):
    return integrate(baseline_a)


@pytest.fixture(scope="session")
def traj_b(baseline_b):
    return integrate(baseline_b)


@pytest.fixture(scope="session")
def ref_a(baseline_a):
    return reference_run(baseline_a)


@pytest.fixture(scope="session")
def ref_b(baseline_b):
    return reference_run(baseline_b)


@pytest.fixture(scope="session")
def report_a(baseline_a):
    return normalized_fidelity(baseline_a)


@pytest.fixture(scope="session")
def report_b(baseline_b):
    return normalized_fidelity(baseline_b)


@pytest.fixture(scope="session")
def default_settings():
    return IntegratorSettings()
