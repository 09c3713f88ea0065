"""Kicked Ising chain simulator.

Exact state-vector dynamics of periodically kicked Ising chains, with
quasi-energy spectra, entanglement entropies, the geometric measure of
entanglement, and quantum-Fisher-information depth certification.
"""

__version__ = "0.1.0"

from .core import (
    Axis,
    DensityMatrix,
    StateVector,
    apply_matrix_at_site,
    apply_site_rotation,
    fidelity,
    make_ghz,
    make_polarized_state,
    make_psi_o,
    partial_trace,
)
from .entanglement import (
    AeeReport,
    GeometricResult,
    aee_report,
    average_entanglement_entropy,
    detect_bell_pairs,
    entropy,
    geometric_measure,
    min_bipartition_entropy,
)
from .experiment import (
    ExperimentConfig,
    SummaryRow,
    generate_summary,
    run_experiment,
    run_trajectory,
)
from .floquet import (
    KICK_ANGLE,
    Boundary,
    Factorization,
    FloquetSpec,
    Model,
    UnitaryMatrix,
    apply_floquet,
    build_dense,
    check_factorization_equivalence,
)
from .qfi import (
    CovarianceMatrix,
    DirectionField,
    QfiResult,
    covariance_matrix,
    entanglement_depth,
    maximize_qfi,
    producibility_bound,
    qfi_for_direction,
)
from .spectral import (
    PeriodReport,
    QuasiSpectrum,
    SpacingResult,
    degeneracy_histogram,
    detect_period,
    detect_period_from_thetas,
    detect_spacing,
    quasi_energies,
)

__all__ = [
    "Axis",
    "DensityMatrix",
    "StateVector",
    "apply_matrix_at_site",
    "apply_site_rotation",
    "fidelity",
    "make_ghz",
    "make_polarized_state",
    "make_psi_o",
    "partial_trace",
    "AeeReport",
    "GeometricResult",
    "aee_report",
    "average_entanglement_entropy",
    "detect_bell_pairs",
    "entropy",
    "geometric_measure",
    "min_bipartition_entropy",
    "ExperimentConfig",
    "SummaryRow",
    "generate_summary",
    "run_experiment",
    "run_trajectory",
    "KICK_ANGLE",
    "Boundary",
    "Factorization",
    "FloquetSpec",
    "Model",
    "UnitaryMatrix",
    "apply_floquet",
    "build_dense",
    "check_factorization_equivalence",
    "CovarianceMatrix",
    "DirectionField",
    "QfiResult",
    "covariance_matrix",
    "entanglement_depth",
    "maximize_qfi",
    "producibility_bound",
    "qfi_for_direction",
    "PeriodReport",
    "QuasiSpectrum",
    "SpacingResult",
    "degeneracy_histogram",
    "detect_period",
    "detect_period_from_thetas",
    "detect_spacing",
    "quasi_energies",
    "__version__",
]
