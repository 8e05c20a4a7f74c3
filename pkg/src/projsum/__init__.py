"""Sum-to-scalar projection families and robust self-testing of their strategies."""

from .errors import (
    BudgetExceededError,
    DegenerateInputError,
    FitDegenerateError,
    IntertwinerError,
    InvalidDimensionError,
    InvalidFamilyError,
    InvalidLevelError,
    InvalidReferenceError,
    InvalidShapeError,
    InvalidStateError,
    InvalidStrategyError,
    JunkExtractionError,
    NonHermitianError,
    NotARepresentationError,
    ProjsumError,
    SerializationError,
    SpectralDegeneracyError,
    UnsupportedOutcomeCountError,
    UnsupportedQuestionCountError,
    UnsupportedScalarError,
)
from .families import (
    FamilyReport,
    ProjectionFamily,
    four_family,
    four_family_step,
    lambda_sequence,
    scalar_is_admissible,
    simplex_family,
    simplex_vertices,
    transpose_family,
    validate_family,
)
from .linalg import (
    SchmidtDecomposition,
    dagger,
    fix_phases,
    hermitian_eig,
    kron,
    maximally_entangled,
    nearest_isometry,
    null_space,
    partial_trace,
    reduced_densities,
    schmidt,
    seminorm,
    state_seminorm,
    unvec,
    vec,
)
from .selftest import (
    CorrelationOperator,
    DilationCertificate,
    IsometryFit,
    ResidualReport,
    SyncReport,
    aligned_junk_fidelity,
    approx_rep_residuals,
    compose_dilations,
    dilation_epsilon,
    eigvec_overlap_bound,
    extract_dilation,
    find_intertwiner,
    fit_isometry,
    n_operator,
    sync_residuals,
    tracial_residual,
)
from .serialize import (
    certificate_to_dict,
    correlation_from_dict,
    correlation_to_dict,
    family_from_dict,
    family_to_dict,
    load_json,
    save_json,
    strategy_from_dict,
    strategy_to_dict,
)
from .strategies import (
    NOISE_MODELS,
    Correlation,
    SchmidtReduction,
    Strategy,
    canonical_strategy,
    chsh_fixture,
    chsh_win_probability,
    correlation_distance,
    ideal_correlation,
    induced_correlation,
    marginals,
    perturb,
    schmidt_reduce,
    synchronicity_defect,
)
from .sweep import (
    SweepConfig,
    SweepRow,
    build_family,
    emit_report,
    load_report,
    run_sweep,
    spearman,
    trial_seed,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "Correlation",
    "CorrelationOperator",
    "DegenerateInputError",
    "DilationCertificate",
    "FamilyReport",
    "FitDegenerateError",
    "IntertwinerError",
    "InvalidDimensionError",
    "InvalidFamilyError",
    "InvalidLevelError",
    "InvalidReferenceError",
    "InvalidShapeError",
    "InvalidStateError",
    "InvalidStrategyError",
    "IsometryFit",
    "JunkExtractionError",
    "NOISE_MODELS",
    "NonHermitianError",
    "NotARepresentationError",
    "ProjectionFamily",
    "ProjsumError",
    "ResidualReport",
    "SchmidtDecomposition",
    "SchmidtReduction",
    "SerializationError",
    "SpectralDegeneracyError",
    "Strategy",
    "SweepConfig",
    "SweepRow",
    "SyncReport",
    "UnsupportedOutcomeCountError",
    "UnsupportedQuestionCountError",
    "UnsupportedScalarError",
    "aligned_junk_fidelity",
    "approx_rep_residuals",
    "build_family",
    "canonical_strategy",
    "certificate_to_dict",
    "chsh_fixture",
    "chsh_win_probability",
    "compose_dilations",
    "correlation_distance",
    "correlation_from_dict",
    "correlation_to_dict",
    "dagger",
    "dilation_epsilon",
    "eigvec_overlap_bound",
    "emit_report",
    "extract_dilation",
    "family_from_dict",
    "family_to_dict",
    "find_intertwiner",
    "fit_isometry",
    "fix_phases",
    "four_family",
    "four_family_step",
    "hermitian_eig",
    "ideal_correlation",
    "induced_correlation",
    "kron",
    "lambda_sequence",
    "load_json",
    "load_report",
    "marginals",
    "maximally_entangled",
    "n_operator",
    "nearest_isometry",
    "null_space",
    "partial_trace",
    "perturb",
    "reduced_densities",
    "run_sweep",
    "save_json",
    "scalar_is_admissible",
    "schmidt",
    "schmidt_reduce",
    "seminorm",
    "simplex_family",
    "simplex_vertices",
    "spearman",
    "state_seminorm",
    "strategy_from_dict",
    "strategy_to_dict",
    "sync_residuals",
    "synchronicity_defect",
    "tracial_residual",
    "transpose_family",
    "trial_seed",
    "unvec",
    "validate_family",
    "vec",
]
