"""Semiclassical simulator for a bright squeezed pulse dispersively coupled
to a three-level matter qubit in a high-Q cavity."""

from .analytic import (
    ApproxReport,
    approx_phase,
    approx_report,
    approx_sigma_channel,
    invert_phase_for_g,
    steady_rho_e1,
    steady_rho_ee,
)
from .bloch import (
    BlochState,
    GUARD_RATIO,
    IntegratorSettings,
    Trajectory,
    initial_state,
    integrate,
    reference_run,
    rhs,
)
from .core import (
    DecayModel,
    PulseShape,
    SqueezeTransform,
    SystemParams,
    alpha_to_beta,
    beta_to_alpha,
    make_squeeze,
    photon_number_variance,
    pulse_S,
    pulse_norm_sq,
    purcell_factor,
    stark_detuning,
    total_decay,
)
from .errors import (
    AnsatzBreakdown,
    ConfigError,
    DispersiveRegimeViolation,
    NoBracket,
    NonConvergence,
    NumericalError,
    SqblochError,
    StepSizeUnderflow,
)
from .experiments import (
    PhaseMatchSpec,
    SweepSpec,
    default_grid,
    run_phase_match,
    run_single,
    run_sweep,
)
from .observables import (
    RunReport,
    coherence_magnitude,
    distinguishability,
    fidelity,
    loss_consistency,
    normalized_fidelity,
    phase_shift,
)

__version__ = "0.1.0"
