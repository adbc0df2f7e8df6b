"""Persidskii AES - stability certificates for delay Persidskii systems.

This package provides functionality to:
- Certify absolute exponential stability of continuous- and discrete-time delay systems
  driven by sector-bounded diagonal nonlinearities
- Compute the maximal certified decay rate (alpha) or convergence rate (lambda)
- Falsify certificates by Monte-Carlo simulation over sampled nonlinearities and histories

Main modules:
- expr: arithmetic expressions in t for time-varying matrix entries
- models: sectors, systems, certificates and tolerances
- positive: Perron-Frobenius witness search for Metzler and nonnegative matrices
- criteria: continuous- and discrete-time stability criteria
- simulation: RK4 delay integrator, discrete iteration and the falsification harness
- utils: system-file loading, report formatting and console output
"""

from .certify import (
    # High-level functions
    certify_system,
    decay_rate,
    simulate,
    validate,
    # Factory functions
    get_continuous_certifier,
    get_discrete_certifier,
)
from .criteria import ContinuousCertifier, DiscreteCertifier
from .models import (
    ContinuousCertificate,
    ContinuousSystem,
    Criterion,
    DelayTerm,
    ConstantBounds,
    DiscreteCertificate,
    DiscreteSystem,
    EvidenceMode,
    Infeasible,
    InfeasibilityReason,
    SectorBounds,
)
from .errors import (
    AESError,
    ConvergenceError,
    ExpressionEvaluationError,
    ExpressionSyntaxError,
    IntegrationError,
    SectorViolationError,
    SystemSpecError,
)
from .utils import load_system
from .version import __version__

__author__ = "persidskii-aes developers"

__all__ = [
    # High-level functions
    "certify_system", "decay_rate", "simulate", "validate", "load_system",
    # Factory functions
    "get_continuous_certifier", "get_discrete_certifier",
    # Service classes
    "ContinuousCertifier", "DiscreteCertifier",
    # Model classes
    "ContinuousCertificate", "ContinuousSystem", "Criterion", "DelayTerm", "ConstantBounds",
    "DiscreteCertificate", "DiscreteSystem", "EvidenceMode", "Infeasible", "InfeasibilityReason",
    "SectorBounds",
    # Errors
    "AESError", "ConvergenceError", "ExpressionEvaluationError", "ExpressionSyntaxError",
    "IntegrationError", "SectorViolationError", "SystemSpecError",
]
