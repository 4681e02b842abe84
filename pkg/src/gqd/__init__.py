"""Global quantum discord of multi-qubit density matrices.

Numeric minimization over local projective measurements, closed forms for
GHZ-plus-noise and Pauli-string mixtures, and phase-damping scans that
detect sudden transitions and frozen plateaus.
"""

from .qcore import (
    BlochVector,
    DensityMatrix,
    Spectrum,
    StateValidationError,
    bloch_rotation,
    binary_entropy,
    diagonal_pinch,
    majorizes,
    maximally_mixed,
    mutual_information,
    partial_trace,
    pauli_string,
    pure_state,
    relative_entropy,
    shannon_entropy,
    tensor_product,
    von_neumann_entropy,
)
from .measurement import (
    LocalMeasurement,
    apply_local_measurement,
    measurement_objective,
    pinch_matrix,
    post_measurement_marginal,
    projectors,
    relative_entropy_objective,
    rotation_to_z,
)
from .discord import (
    GqdResult,
    InvalidParamsError,
    OptimizerOptions,
    PauliDiagonalParams,
    QubitLimitError,
    ValidationReport,
    WernerGhzParams,
    ghz_vector,
    gqd_maximally_mixed,
    gqd_numeric,
    gqd_pauli_diagonal,
    gqd_werner_ghz,
    gqd_werner_ghz_asymptotic,
    pauli_diagonal_spectrum,
    pauli_diagonal_state,
    validate_pauli_params,
    werner_ghz_state,
)
from .dynamics import (
    PlateauInterval,
    ScanReport,
    SweepRecord,
    dephase_pauli_params,
    phase_damping,
    scan_gqd_vs_p,
    sudden_transition_point,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "DensityMatrix",
    "Spectrum",
    "StateValidationError",
    "bloch_rotation",
    "binary_entropy",
    "diagonal_pinch",
    "majorizes",
    "maximally_mixed",
    "mutual_information",
    "partial_trace",
    "pauli_string",
    "pure_state",
    "relative_entropy",
    "shannon_entropy",
    "tensor_product",
    "von_neumann_entropy",
    "LocalMeasurement",
    "apply_local_measurement",
    "measurement_objective",
    "pinch_matrix",
    "post_measurement_marginal",
    "projectors",
    "relative_entropy_objective",
    "rotation_to_z",
    "GqdResult",
    "InvalidParamsError",
    "OptimizerOptions",
    "PauliDiagonalParams",
    "QubitLimitError",
    "ValidationReport",
    "WernerGhzParams",
    "ghz_vector",
    "gqd_maximally_mixed",
    "gqd_numeric",
    "gqd_pauli_diagonal",
    "gqd_werner_ghz",
    "gqd_werner_ghz_asymptotic",
    "pauli_diagonal_spectrum",
    "pauli_diagonal_state",
    "validate_pauli_params",
    "werner_ghz_state",
    "PlateauInterval",
    "ScanReport",
    "SweepRecord",
    "dephase_pauli_params",
    "phase_damping",
    "scan_gqd_vs_p",
    "sudden_transition_point",
    "__version__",
]
