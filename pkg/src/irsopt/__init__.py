"""Robust on/off IRS-element activation for worst-case energy efficiency.

Public surface:

* :mod:`irsopt.model`    -- closed-form SNR / worst-case SNR / power / SE / EE
* :mod:`irsopt.optimize` -- DP solver, fixed-M solver, exhaustive oracle, baseline
* :mod:`irsopt.channel`  -- random channel-estimate generation
* :mod:`irsopt.harness`  -- experiment sweeps, averaging, CSV output
"""

from .channel import (
    FadingParams,
    Geometry,
    PathLossParams,
    SteeringAngles,
    los_vector,
    path_loss,
    realization_seed,
    sample_estimate,
    steering_angles,
)
from .errors import (
    AssumptionViolatedError,
    CapacityError,
    ConfigError,
    DimensionMismatchError,
    DomainError,
    IrsOptError,
)
from .harness import (
    ExperimentConfig,
    SweepRecord,
    default_config,
    derive_gamma_min,
    derive_uncertainty,
    read_csv,
    run_sweep,
    write_csv,
)
from .model import (
    ActivationVector,
    ChannelEstimate,
    ComplexCoeff,
    CsiError,
    LinkBudget,
    PhaseShiftVector,
    PowerModel,
    UncertaintySpec,
    adversarial_error,
    check_assumption1,
    check_assumption2,
    f_sum,
    g_penalty,
    optimal_phase_shifts,
    psi_threshold,
    snr_given_error,
    total_power,
    worst_case_ee,
    worst_case_se,
    worst_case_snr,
)
from .optimize import (
    DpStage,
    OptimizationResult,
    ProblemSpec,
    all_on_baseline,
    dp_optimize,
    exhaustive_search,
    solve_fixed_m,
)

__all__ = [
    "ActivationVector",
    "AssumptionViolatedError",
    "CapacityError",
    "ChannelEstimate",
    "ComplexCoeff",
    "ConfigError",
    "CsiError",
    "DimensionMismatchError",
    "DomainError",
    "DpStage",
    "ExperimentConfig",
    "FadingParams",
    "Geometry",
    "IrsOptError",
    "LinkBudget",
    "OptimizationResult",
    "PathLossParams",
    "PhaseShiftVector",
    "PowerModel",
    "ProblemSpec",
    "SteeringAngles",
    "SweepRecord",
    "UncertaintySpec",
    "adversarial_error",
    "all_on_baseline",
    "check_assumption1",
    "check_assumption2",
    "default_config",
    "derive_gamma_min",
    "derive_uncertainty",
    "dp_optimize",
    "exhaustive_search",
    "f_sum",
    "g_penalty",
    "los_vector",
    "optimal_phase_shifts",
    "path_loss",
    "psi_threshold",
    "read_csv",
    "realization_seed",
    "run_sweep",
    "sample_estimate",
    "snr_given_error",
    "solve_fixed_m",
    "steering_angles",
    "total_power",
    "worst_case_ee",
    "worst_case_se",
    "worst_case_snr",
    "write_csv",
]

__version__ = "0.1.0"
