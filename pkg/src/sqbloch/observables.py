"""Derived quantities of a run: phase shift, loss, coherence, fidelity.

The qubit figure of merit is F = (1 + 2 |rho10|) / 2 computed from the final
coherence magnitude, normalized against a Gamma = 0 twin of the same run
(F = F_r / F_i). The raw values are kept in the report so the small
above-unity excess of the unnormalized fidelity remains visible instead of
being hidden by the normalization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import IntegratorSettings, Trajectory, integrate, reference_run
from .core import SystemParams, alpha_to_beta
from .errors import AnsatzBreakdown

__all__ = [
    "RunReport",
    "REPORT_FIELDS",
    "phase_shift",
    "coherence_magnitude",
    "fidelity",
    "distinguishability",
    "loss_consistency",
    "normalized_fidelity",
]

# Flat serialization order shared by the JSON report and every CSV row.
REPORT_FIELDS = (
    "theta",
    "alpha_final_re",
    "alpha_final_im",
    "loss_fraction",
    "d",
    "rho10_mag",
    "F_r",
    "F_i",
    "F",
    "rho_ee_max",
    "loss_consistency_rel",
)

_OVERLAP_EXP_LIMIT = 700.0
_F_SLACK = 1e-6


@dataclass(frozen=True)
class RunReport:
    theta: float
    alpha_final: complex
    loss_fraction: float
    d: float
    rho10_mag: float
    F_r: float
    F_i: float
    F: float
    rho_ee_max: float
    loss_consistency_rel: float

    def __post_init__(self) -> None:
        if not (0.0 < self.F_r <= 1.0 + _F_SLACK):
            raise ValueError(f"F_r out of range: {self.F_r}")
        if not (0.0 < self.F_i <= 1.0 + _F_SLACK):
            raise ValueError(f"F_i out of range: {self.F_i}")
        if self.loss_fraction < 0.0:
            raise ValueError(f"loss_fraction must be >= 0, got {self.loss_fraction}")
        if not math.isclose(self.F, self.F_r / self.F_i, rel_tol=1e-12):
            raise ValueError("F must equal F_r / F_i")

    def to_record(self) -> dict:
        return {
            "theta": self.theta,
            "alpha_final_re": self.alpha_final.real,
            "alpha_final_im": self.alpha_final.imag,
            "loss_fraction": self.loss_fraction,
            "d": self.d,
            "rho10_mag": self.rho10_mag,
            "F_r": self.F_r,
            "F_i": self.F_i,
            "F": self.F,
            "rho_ee_max": self.rho_ee_max,
            "loss_consistency_rel": self.loss_consistency_rel,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "RunReport":
        return cls(
            theta=float(rec["theta"]),
            alpha_final=complex(float(rec["alpha_final_re"]), float(rec["alpha_final_im"])),
            loss_fraction=float(rec["loss_fraction"]),
            d=float(rec["d"]),
            rho10_mag=float(rec["rho10_mag"]),
            F_r=float(rec["F_r"]),
            F_i=float(rec["F_i"]),
            F=float(rec["F"]),
            rho_ee_max=float(rec["rho_ee_max"]),
            loss_consistency_rel=float(rec["loss_consistency_rel"]),
        )


def phase_shift(traj: Trajectory) -> float:
    """Phase of the final pulse amplitude, principal branch (-pi, pi]."""
    a = traj.alpha_t[-1]
    if a == 0:
        raise ValueError("final pulse amplitude is zero; phase undefined")
    return float(np.angle(a))


def coherence_magnitude(traj: Trajectory) -> float:
    """|rho10| at the window edge: exp(|beta - beta~|^2 / 2) * |sigma_10|.

    The exponential undoes the pulse-overlap collapse carried by the sampled
    sigma_10, leaving only the irreversible (decay-driven) damping of the
    qubit coherence.
    """
    p = traj.params
    sq = p.squeeze
    beta = alpha_to_beta(complex(p.alpha), sq)
    a_end = complex(traj.alpha_t[-1])
    beta_t = sq.mu * a_end + sq.nu * a_end.conjugate()
    diff2 = abs(beta - beta_t) ** 2
    if diff2 > _OVERLAP_EXP_LIMIT:
        raise AnsatzBreakdown(
            f"|beta - beta~|^2 = {diff2:.3g} overflows the overlap exponent"
        )
    return math.exp(0.5 * diff2) * abs(complex(traj.sigma_10[-1]))


def fidelity(rho10_mag: float) -> float:
    """Qubit fidelity (1 + 2 |rho10|) / 2."""
    if rho10_mag < 0.0:
        raise ValueError(f"rho10_mag must be >= 0, got {rho10_mag}")
    return 0.5 * (1.0 + 2.0 * rho10_mag)


def distinguishability(traj: Trajectory) -> float:
    """Field-quadrature displacement |alpha~(inf)| * sin(theta) separating outcomes."""
    return abs(complex(traj.alpha_t[-1])) * math.sin(phase_shift(traj))


def loss_consistency(traj: Trajectory) -> float:
    """Relative mismatch between the final pulse energy and the decay quadrature.

    Compares the trajectory's photon loss |alpha|^2 - |alpha~(end)|^2 against
    2 Gamma int rho_ee K / (2 rho11(0)) dt evaluated by trapezoid on the
    samples. Normalized by the quadrature when it is nonzero, else by
    |alpha|^2 (so a lossless run reports only its tiny unitarity residual).
    """
    p = traj.params
    if p.g == 0.0:
        return 0.0
    a2 = abs(complex(p.alpha)) ** 2
    if a2 == 0.0:
        return 0.0
    lhs = a2 - abs(traj.alpha_t[-1]) ** 2
    k_fac = p.squeeze.k_factor
    quad = 2.0 * p.Gamma * np.trapezoid(
        traj.rho_ee * k_fac / (2.0 * p.rho11_0), traj.times
    )
    if quad != 0.0:
        return abs(lhs - quad) / abs(quad)
    return abs(lhs) / a2


def normalized_fidelity(
    p: SystemParams,
    settings: IntegratorSettings | None = None,
    reference: Trajectory | None = None,
) -> RunReport:
    """Run the system and its Gamma = 0 twin, and assemble the full report.

    A precomputed reference trajectory may be passed to amortize the twin
    across runs that share every parameter except Gamma.
    """
    traj = integrate(p, settings)
    if p.Gamma == 0.0:
        reference = traj  # a lossless run is its own reference, F = 1 exactly
    elif reference is None:
        reference = reference_run(p, settings)
    rho10_mag = coherence_magnitude(traj)
    f_r = fidelity(rho10_mag)
    f_i = fidelity(coherence_magnitude(reference))
    alpha_mag = abs(complex(p.alpha))
    a_end = complex(traj.alpha_t[-1])
    if alpha_mag == 0.0:
        # no light: phase undefined, nothing displaced, nothing lost
        theta = 0.0
        loss = 0.0
        d = 0.0
    else:
        theta = phase_shift(traj)
        loss = abs(alpha_mag - abs(a_end)) / alpha_mag
        d = distinguishability(traj)
    return RunReport(
        theta=theta,
        alpha_final=a_end,
        loss_fraction=loss,
        d=d,
        rho10_mag=rho10_mag,
        F_r=f_r,
        F_i=f_i,
        F=f_r / f_i,
        rho_ee_max=traj.rho_ee_max,
        loss_consistency_rel=loss_consistency(traj),
    )
