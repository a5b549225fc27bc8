"""Physical parameters, squeezed-state algebra, pulse shape, and rate helpers.

Unit conventions used throughout the package:

- every angular frequency (g, Gamma, Omega, Delta, kappa, gamma) is in rad/ns,
  so a rate quoted as f GHz "over 2 pi" enters as 2*pi*f rad/ns;
- time (sigma, t) is in ns;
- field amplitudes (alpha, beta) are dimensionless coherent amplitudes.

The squeeze transform maps a displaced-squeezed-state amplitude alpha to the
equivalent two-photon coherent amplitude

    beta = mu * alpha + nu * conj(alpha),    mu = cosh r,  nu = e^{2 i phi} sinh r,

with mu^2 - |nu|^2 = 1. The input pulse is a unit-norm Gaussian

    S_in(t) = (sqrt(2) / (sqrt(pi) sigma))^{1/2} exp(-(t - t_c)^2 / sigma^2)

coupled into the cavity as S(t) = 2 sqrt(kappa) S_in(t) / gamma, which gives
the integral identity  int |S|^2 dt = 4 kappa / gamma^2  (= 4/gamma when
kappa == gamma).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "SqueezeTransform",
    "SystemParams",
    "PulseShape",
    "DecayModel",
    "make_squeeze",
    "alpha_to_beta",
    "beta_to_alpha",
    "purcell_factor",
    "total_decay",
    "stark_detuning",
    "pulse_S",
    "pulse_norm_sq",
    "photon_number_variance",
]

_POP_TOL = 1e-12


@dataclass(frozen=True)
class SqueezeTransform:
    """Squeeze factor r and phase phi with the derived Bogoliubov coefficients."""

    r: float
    phi: float
    mu: float
    nu: complex

    @property
    def k_factor(self) -> float:
        """Backaction enhancement 1 + mu^2 + |nu|^2 (equals 2 for no squeezing)."""
        return 1.0 + self.mu ** 2 + abs(self.nu) ** 2


def make_squeeze(r: float, phi: float) -> SqueezeTransform:
    """Build a SqueezeTransform with mu = cosh r, nu = e^{2 i phi} sinh r.

    r must be finite and non-negative; phi must be finite.
    """
    if not (math.isfinite(r) and math.isfinite(phi)):
        raise ValueError(f"squeeze parameters must be finite, got r={r}, phi={phi}")
    if r < 0.0:
        raise ValueError(f"squeeze factor must be >= 0, got r={r}")
    mu = math.cosh(r)
    nu = cmath.exp(2j * phi) * math.sinh(r)
    return SqueezeTransform(r=r, phi=phi, mu=mu, nu=nu)


def alpha_to_beta(alpha: complex, sq: SqueezeTransform) -> complex:
    """Map a squeezed-state amplitude to the two-photon frame: mu*a + nu*conj(a)."""
    return sq.mu * alpha + sq.nu * alpha.conjugate()


def beta_to_alpha(beta: complex, sq: SqueezeTransform) -> complex:
    """Inverse of alpha_to_beta: mu*b - nu*conj(b). Exact by mu^2 - |nu|^2 = 1."""
    return sq.mu * beta - sq.nu * beta.conjugate()


@dataclass(frozen=True)
class SystemParams:
    """All rates and initial conditions for one simulation run.

    rho00_0/rho11_0 are the initial qubit populations and rho10_0 the initial
    qubit coherence; only the light-coupled branch population rho11_0 enters
    the dynamics, but the full triple is validated for physicality.
    """

    g: float
    Gamma: float
    Omega: float
    kappa: float
    gamma: float
    sigma: float
    alpha: complex
    squeeze: SqueezeTransform
    Delta: float = 0.0
    rho00_0: float = 0.5
    rho11_0: float = 0.5
    rho10_0: complex = 0.5 + 0.0j

    def __post_init__(self) -> None:
        for name in ("g", "Gamma", "kappa", "gamma", "sigma"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if abs(self.rho00_0 + self.rho11_0 - 1.0) > _POP_TOL:
            raise ValueError(
                f"initial populations must sum to 1, got {self.rho00_0} + {self.rho11_0}"
            )
        if not (0.0 <= self.rho00_0 <= 1.0 and 0.0 <= self.rho11_0 <= 1.0):
            raise ValueError("initial populations must lie in [0, 1]")
        if abs(self.rho10_0) ** 2 > self.rho00_0 * self.rho11_0 + _POP_TOL:
            raise ValueError(
                "initial coherence violates |rho10|^2 <= rho00 * rho11"
            )

    @property
    def pulse(self) -> "PulseShape":
        return PulseShape(sigma=self.sigma, center=0.0, kappa=self.kappa, gamma=self.gamma)

    @property
    def beta(self) -> complex:
        """Input amplitude in the two-photon frame."""
        return alpha_to_beta(self.alpha, self.squeeze)


@dataclass(frozen=True)
class PulseShape:
    """Gaussian input pulse of width sigma centered at t = center (ns)."""

    sigma: float
    center: float = 0.0
    kappa: float = 0.0
    gamma: float = 0.0

    def __post_init__(self) -> None:
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if self.gamma <= 0.0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.kappa < 0.0:
            raise ValueError(f"kappa must be >= 0, got {self.kappa}")

    @property
    def amplitude(self) -> float:
        """Peak value of S(t): 2 sqrt(kappa / (gamma^2)) * (sqrt(2)/(sqrt(pi) sigma))^{1/2}."""
        s_in_peak = (math.sqrt(2.0) / (math.sqrt(math.pi) * self.sigma)) ** 0.5
        return 2.0 * math.sqrt(self.kappa) * s_in_peak / self.gamma


def pulse_S(t: float, p: PulseShape) -> float:
    """Cavity-coupled pulse S(t) = 2 sqrt(kappa) S_in(t) / gamma at time t (ns)."""
    x = (t - p.center) / p.sigma
    return p.amplitude * math.exp(-x * x)


def pulse_norm_sq(p: PulseShape) -> float:
    """Analytic value of int |S(t)|^2 dt = 4 kappa / gamma^2."""
    return 4.0 * p.kappa / p.gamma ** 2


@dataclass(frozen=True)
class DecayModel:
    """Radiative / non-radiative lifetimes (ns) and pulse center offset (rad/ns).

    tau_nr = None encodes the absence of a non-radiative channel.
    """

    tau_r: float
    tau_nr: float | None = None
    omega_p: float = 0.0

    def __post_init__(self) -> None:
        if self.tau_r <= 0.0:
            raise ValueError(f"tau_r must be > 0, got {self.tau_r}")
        if self.tau_nr is not None and self.tau_nr <= 0.0:
            raise ValueError(f"tau_nr must be > 0 or None, got {self.tau_nr}")


def purcell_factor(omega: float, dm: DecayModel, g: float, gamma: float) -> float:
    """Cavity enhancement of spontaneous emission: tau_r*gamma*g^2 / (omega^2 + gamma^2/4)."""
    if gamma <= 0.0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    return dm.tau_r * gamma * g * g / (omega * omega + gamma * gamma / 4.0)


def total_decay(dm: DecayModel, P: float) -> float:
    """Total population decay rate 2*Gamma = (1 + P)/tau_r + 1/tau_nr (rad/ns)."""
    rate = (1.0 + P) / dm.tau_r
    if dm.tau_nr is not None:
        rate += 1.0 / dm.tau_nr
    return rate


def stark_detuning(omega_p: float, P: float, gamma: float, tau_r: float) -> float:
    """Intensity-shifted atom-cavity detuning Omega = omega_p * (1 + P/(gamma*tau_r))."""
    if gamma <= 0.0 or tau_r <= 0.0:
        raise ValueError(f"gamma and tau_r must be > 0, got {gamma}, {tau_r}")
    return omega_p * (1.0 + P / (gamma * tau_r))


def photon_number_variance(alpha: complex, sq: SqueezeTransform, theta: float) -> float:
    """Photon-number variance of the squeezed state after a phase rotation theta.

    2 sinh^2 r cosh^2 r
      + |alpha|^2 [ e^{-2r} cos^2(theta - phi/2) + e^{2r} sin^2(theta - phi/2) ]
    """
    r, phi = sq.r, sq.phi
    sh, ch = math.sinh(r), math.cosh(r)
    a2 = abs(alpha) ** 2
    c = math.cos(theta - phi / 2.0)
    s = math.sin(theta - phi / 2.0)
    return 2.0 * sh * sh * ch * ch + a2 * (
        math.exp(-2.0 * r) * c * c + math.exp(2.0 * r) * s * s
    )
