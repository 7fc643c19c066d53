from .applications import bundle_value, impact_matrix, leontief_solve, pagerank_solve, preference_bounds, preference_vector
from .cone import (
    certify,
    completion_residuals,
    in_cone,
    log_convex_combine,
    majorant_fixes,
    rank_one_candidate,
    stochastic_completion,
    wedge_add,
    wedge_scale,
)
from .config import Settings, load_settings
from .errors import (
    ConeRejected,
    ContractViolation,
    ConvergenceError,
    InfimumNotAttained,
    InternalConsistencyError,
    KernelWedgeError,
    NumericalOverflowError,
    ParseError,
    PreconditionError,
    SpectralRadiusError,
    StochasticOperatorError,
)
from .inequalities import (
    cone_mixed_bound_check,
    cone_norm_bound_check,
    holder_seminorm_check,
    kernel_holder_check,
    kernel_seminorm_chain_check,
    kernel_sum_split_check,
    sum_split_check,
    sum_split_seminorm_check,
    young_argmin,
    young_eval,
    young_grid_search,
)
from .kernel_bridge import continuous_completion_demo, decay_ratios, discretize, named_kernel, refinement_study
from .models import (
    Bundle,
    Completion,
    ConeCertificate,
    ConeRejection,
    Economy,
    KernelSpec,
    NonNegativeVector,
    NormKind,
    PositiveOperator,
    PowerSeries,
    PropertyReport,
    SeriesOptions,
    StochClass,
    TrialConfig,
    WeightedSpace,
)
from .suite import PropertySuite, run_property_suite
from .transforms import (
    commuting_preservation_check,
    exp_apply,
    resolvent_apply,
    series_apply,
    spectral_radius,
)
from .weighted_space import apply, classify, column_mass, compose, is_strictly_positive, norm

__all__ = [
    "WeightedSpace",
    "NonNegativeVector",
    "PositiveOperator",
    "NormKind",
    "StochClass",
    "ConeCertificate",
    "ConeRejection",
    "Completion",
    "TrialConfig",
    "PropertyReport",
    "PowerSeries",
    "SeriesOptions",
    "Economy",
    "Bundle",
    "KernelSpec",
    "apply",
    "column_mass",
    "classify",
    "norm",
    "is_strictly_positive",
    "compose",
    "in_cone",
    "certify",
    "stochastic_completion",
    "completion_residuals",
    "wedge_add",
    "wedge_scale",
    "log_convex_combine",
    "majorant_fixes",
    "rank_one_candidate",
    "young_eval",
    "young_argmin",
    "young_grid_search",
    "holder_seminorm_check",
    "kernel_holder_check",
    "kernel_seminorm_chain_check",
    "kernel_sum_split_check",
    "sum_split_check",
    "sum_split_seminorm_check",
    "cone_norm_bound_check",
    "cone_mixed_bound_check",
    "PropertySuite",
    "run_property_suite",
    "spectral_radius",
    "series_apply",
    "exp_apply",
    "resolvent_apply",
    "commuting_preservation_check",
    "bundle_value",
    "preference_vector",
    "preference_bounds",
    "leontief_solve",
    "impact_matrix",
    "pagerank_solve",
    "discretize",
    "named_kernel",
    "continuous_completion_demo",
    "refinement_study",
    "decay_ratios",
    "Settings",
    "load_settings",
    "KernelWedgeError",
    "ContractViolation",
    "PreconditionError",
    "StochasticOperatorError",
    "SpectralRadiusError",
    "InfimumNotAttained",
    "ConvergenceError",
    "NumericalOverflowError",
    "InternalConsistencyError",
    "ConeRejected",
    "ParseError",
]
