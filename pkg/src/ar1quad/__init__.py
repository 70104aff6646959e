"""Exact exponential transform of squared partial sums of a conditioned
AR(1) process, its multiplicative-ergodicity constants, and independent
numerical oracles that validate every closed form."""

from .closed_form import (
    ClosedFormConstants,
    ErgodicConstants,
    RateFit,
    TransformValue,
    constants,
    ergodic_constants,
    fit_convergence_rate,
    normalized_transform,
    sigma_via_recursion,
    transform,
)
from .errors import (
    AccuracyError,
    ConvergenceError,
    DomainBoundaryError,
    DomainError,
    ParameterError,
    SingularConstantError,
    SingularSequenceError,
)
from .model import (
    ConditionalPath,
    ModelParams,
    conditional_covariance,
    conditional_mean,
    simulate_conditional,
)
from .oracle import (
    OracleResult,
    gauss_hermite_nodes,
    matrix_mgf,
    monte_carlo_mgf,
    unconditional_transform,
)
from .spectral import (
    SequenceRatios,
    SpectralData,
    TransformPoint,
    domain_check,
    roots,
    sequence_ratios,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ClosedFormConstants",
    "ConditionalPath",
    "ConvergenceError",
    "DomainBoundaryError",
    "DomainError",
    "ErgodicConstants",
    "ModelParams",
    "OracleResult",
    "ParameterError",
    "RateFit",
    "SequenceRatios",
    "SingularConstantError",
    "SingularSequenceError",
    "SpectralData",
    "TransformPoint",
    "TransformValue",
    "conditional_covariance",
    "conditional_mean",
    "constants",
    "domain_check",
    "ergodic_constants",
    "fit_convergence_rate",
    "gauss_hermite_nodes",
    "matrix_mgf",
    "monte_carlo_mgf",
    "normalized_transform",
    "roots",
    "sequence_ratios",
    "sigma_via_recursion",
    "simulate_conditional",
    "transform",
    "unconditional_transform",
]
