"""Quantum-jump and telegraph simulations of two coupled emitters."""

from qtraj._core import (
    AnalysisOptions,
    ConfigError,
    EmissionConvention,
    EnsembleSummary,
    IoError,
    MiMode,
    Model,
    NumericalGuardError,
    OccupancyMode,
    SimParams,
    UndefinedStatisticError,
    __version__,
    basis_index,
    classical_mutual_information,
    effective_drive,
    effective_hamiltonian,
    flip_probability,
    hamiltonian,
    herm_eigvals,
    joint_encode,
    kron,
    lz_complexity,
    mat_exp,
    normalized_lz,
    partial_trace,
    propagator,
    quantum_mutual_information,
    run_ensemble,
    run_trajectory,
    spearman,
    von_neumann_entropy,
    welch_t_test,
)

__all__ = [
    "AnalysisOptions",
    "ConfigError",
    "EmissionConvention",
    "EnsembleSummary",
    "IoError",
    "MiMode",
    "Model",
    "NumericalGuardError",
    "OccupancyMode",
    "SimParams",
    "UndefinedStatisticError",
    "__version__",
    "basis_index",
    "classical_mutual_information",
    "effective_drive",
    "effective_hamiltonian",
    "flip_probability",
    "hamiltonian",
    "herm_eigvals",
    "joint_encode",
    "kron",
    "lz_complexity",
    "mat_exp",
    "normalized_lz",
    "partial_trace",
    "propagator",
    "quantum_mutual_information",
    "run_ensemble",
    "run_trajectory",
    "spearman",
    "von_neumann_entropy",
    "welch_t_test",
]
