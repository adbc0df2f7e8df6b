"""Simulation and Monte-Carlo falsification of certificates."""

from .nonlinearity import (
    GeneralizedNonlinearity,
    NonlinearitySample,
    Shape,
    ShapeKind,
    ShapeParameters,
    TabulatedNonlinearity,
    allowed_shapes,
    require_membership,
    sample_nonlinearity,
    sampling_slopes,
    stack_parameters,
    verify_membership,
)
from .history import HistoryKind, InitialHistory, sample_history
from .trace import SimulationTrace
from .integrate import DEFAULT_STEP, adjusted_step, default_horizon, integrate_dde, integrate_dde_batch
from .iterate import default_discrete_horizon, iterate_discrete, iterate_discrete_batch
from .envelope import EnvelopeReport, check_envelope, tail_slope
from .monte_carlo import FALSIFICATION_BANNER, RunSummary, ValidationReport, monte_carlo_validate

__all__ = [
    # Nonlinearities
    "GeneralizedNonlinearity", "NonlinearitySample", "Shape", "ShapeKind", "ShapeParameters",
    "TabulatedNonlinearity", "allowed_shapes", "require_membership", "sample_nonlinearity",
    "sampling_slopes", "stack_parameters", "verify_membership",
    # Histories and traces
    "HistoryKind", "InitialHistory", "sample_history", "SimulationTrace",
    # Solvers
    "DEFAULT_STEP", "adjusted_step", "default_horizon", "integrate_dde", "integrate_dde_batch",
    "default_discrete_horizon", "iterate_discrete", "iterate_discrete_batch",
    # Validation
    "EnvelopeReport", "check_envelope", "tail_slope",
    "FALSIFICATION_BANNER", "RunSummary", "ValidationReport", "monte_carlo_validate",
]
