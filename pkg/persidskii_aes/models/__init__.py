"""Domain models: sectors, coefficient matrices, systems and certificates."""

from .sector import SectorBounds, SectorKind
from .matrices import (
    MatrixExpr,
    MatrixLike,
    as_const_matrix,
    as_matrix_like,
    default_step_grid,
    default_time_grid,
    entrywise_abs,
    is_constant_matrix,
    is_metzler,
    is_nonnegative,
    matrix_at,
    matrix_dim,
    matrix_on_grid,
    metzlerize,
    sup_on_grid,
)
from .system import ConstantBounds, ContinuousSystem, DelayTerm, DiscreteSystem
from .certificate import (
    ConditionCheck,
    ContinuousCertificate,
    Criterion,
    DecayProfile,
    DiscreteCertificate,
    EvidenceMode,
    Infeasible,
    InfeasibilityReason,
    LambdaProfile,
    RateWindow,
    WitnessMethod,
    WitnessResult,
    certificate_from_dict,
)

__all__ = [
    # Sectors
    "SectorBounds", "SectorKind",
    # Matrices
    "MatrixExpr", "MatrixLike", "as_const_matrix", "as_matrix_like", "default_step_grid",
    "default_time_grid", "entrywise_abs", "is_constant_matrix", "is_metzler", "is_nonnegative",
    "matrix_at", "matrix_dim", "matrix_on_grid", "metzlerize", "sup_on_grid",
    # Systems
    "ConstantBounds", "ContinuousSystem", "DelayTerm", "DiscreteSystem",
    # Results
    "ConditionCheck", "ContinuousCertificate", "Criterion", "DecayProfile", "DiscreteCertificate",
    "EvidenceMode", "Infeasible", "InfeasibilityReason", "LambdaProfile", "RateWindow",
    "WitnessMethod", "WitnessResult", "certificate_from_dict",
]
