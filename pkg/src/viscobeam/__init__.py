"""Finite-difference solver for a damped Euler-Bernoulli beam with
tempered power-law memory, plus a self-convergence study harness."""

__version__ = "0.1.0"

from .kernel import (
    ConfigurationError,
    KernelSpec,
    KernelTables,
    NO_MEMORY,
    NON_OSCILLATORY,
    OSCILLATORY,
    beta_eval,
    kernel_tail,
    mu0,
    quadrature_weights,
    tail_antiderivatives,
)
from .grid_ops import (
    BandedMatrix,
    Grid,
    assemble_biharmonic,
    fourth_difference,
    inner,
    max_norm,
    norm,
    second_difference,
)
from .model import (
    DampingFunction,
    ProblemSpec,
    damping_coefficient,
    require_valid,
    validate,
)
from .stepper import (
    NonConvergenceError,
    SolverConfig,
    SolverState,
    TimeSeries,
    assemble_step_system,
    initialize,
    run,
    step,
    write_solution_csv,
)
from .diagnostics import (
    EnergyRecord,
    StabilityVerdict,
    data_functional,
    energy,
    forcing_l1_norm,
    stability_monitor,
)
from .studies import (
    ConvergenceReport,
    StudyCell,
    StudySpec,
    rate,
    run_study,
    spatial_error,
    temporal_error,
)
from .presets import example1_problem, example2_problem, preset_config

__all__ = [
    "BandedMatrix", "ConfigurationError", "ConvergenceReport",
    "DampingFunction", "EnergyRecord", "Grid", "KernelSpec", "KernelTables",
    "NO_MEMORY", "NON_OSCILLATORY", "NonConvergenceError", "OSCILLATORY",
    "ProblemSpec", "SolverConfig", "SolverState", "StabilityVerdict",
    "StudyCell", "StudySpec", "TimeSeries", "assemble_biharmonic",
    "assemble_step_system", "beta_eval", "damping_coefficient",
    "data_functional", "energy", "example1_problem", "example2_problem",
    "forcing_l1_norm", "fourth_difference", "initialize", "inner",
    "kernel_tail", "max_norm", "mu0", "norm", "preset_config",
    "quadrature_weights", "rate", "require_valid", "run", "run_study",
    "second_difference", "spatial_error", "stability_monitor", "step",
    "tail_antiderivatives", "temporal_error", "validate", "write_solution_csv",
]
