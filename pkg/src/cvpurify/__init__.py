"""Entanglement purification of two optical modes via atomic-ensemble nodes.

The pipeline: a two-mode squeezed thermal state of light couples at two
distant nodes to collective atomic excitations (parametric or beam-splitter
interaction), each ensemble is checked for the presence or absence of
excitations, and the conditioned optical state is scored by its coherent-state
teleportation fidelity. Closed-form Gaussian evolution and conditioning live
in :mod:`cvpurify.chi` and :mod:`cvpurify.conditioning`; independent
brute-force verifiers in :mod:`cvpurify.fock` and :mod:`cvpurify.quadrature`;
sweeps, figure data and the CLI in :mod:`cvpurify.sweep`,
:mod:`cvpurify.figures` and :mod:`cvpurify.cli`.
"""

__version__ = "0.1.0"

from .chi import (
    DEFAULT_ODE_STEP,
    GaussianChi4,
    InteractionKind,
    PARAMETRIC_TAU_CAP,
    ProtocolParams,
    chi_exponent,
    evolve_closed_form,
    evolve_ode,
    initial_chi,
)
from .conditioning import (
    DEGENERACY_THRESHOLD,
    FidelityReport,
    GaussianTerm2,
    Outcome,
    OUTCOMES,
    OutcomeProbabilities,
    WeightedGaussianMix,
    conditional_chi,
    efficiency,
    f_param_baseline,
    fidelity_report,
    initial_fidelity,
    outcome_probabilities,
    partial_vacuum_integrals,
    swap_exchange,
    teleportation_fidelity,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    CvPurifyError,
    DegenerateOutcomeError,
    DegenerateStateError,
    DomainError,
    FidelityDivergenceError,
    NoAdmissiblePointError,
    TruncationError,
)
from .fock import (
    FockState,
    TwoModeDensity,
    build_initial_fock,
    char_value_fock,
    evolve_fock,
    fidelity_fock,
    project_outcome_fock,
)
from .quadrature import QuadratureSpec, quadrature_I, quadrature_fidelity
from .sweep import (
    OptimalTime,
    SweepConfig,
    SweepRow,
    evaluate_point,
    find_optimal_time,
    grid_range,
    run_sweep,
    write_sweep,
)
from .figures import FIGURES, emit_figure_data
from .checks import OracleReport, oracle_check

__all__ = [
    "__version__",
    "DEFAULT_ODE_STEP",
    "DEGENERACY_THRESHOLD",
    "PARAMETRIC_TAU_CAP",
    "GaussianChi4",
    "InteractionKind",
    "ProtocolParams",
    "chi_exponent",
    "evolve_closed_form",
    "evolve_ode",
    "initial_chi",
    "FidelityReport",
    "GaussianTerm2",
    "Outcome",
    "OUTCOMES",
    "OutcomeProbabilities",
    "WeightedGaussianMix",
    "conditional_chi",
    "efficiency",
    "f_param_baseline",
    "fidelity_report",
    "initial_fidelity",
    "outcome_probabilities",
    "partial_vacuum_integrals",
    "swap_exchange",
    "teleportation_fidelity",
    "ConfigError",
    "ConvergenceError",
    "CvPurifyError",
    "DegenerateOutcomeError",
    "DegenerateStateError",
    "DomainError",
    "FidelityDivergenceError",
    "NoAdmissiblePointError",
    "TruncationError",
    "FockState",
    "TwoModeDensity",
    "build_initial_fock",
    "char_value_fock",
    "evolve_fock",
    "fidelity_fock",
    "project_outcome_fock",
    "QuadratureSpec",
    "quadrature_I",
    "quadrature_fidelity",
    "OptimalTime",
    "SweepConfig",
    "SweepRow",
    "evaluate_point",
    "find_optimal_time",
    "grid_range",
    "run_sweep",
    "write_sweep",
    "FIGURES",
    "emit_figure_data",
    "OracleReport",
    "oracle_check",
]
