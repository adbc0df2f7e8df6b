"""Results produced by the witness search and the stability criteria."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from ..errors import SystemSpecError


class EvidenceMode(str, Enum):
    """How the "for all t" quantifier was discharged."""

    USER_BOUNDS = "UserBounds"
    GRID_EVIDENCE = "GridEvidence"


class Criterion(str, Enum):
    THM1 = "Thm1"
    THM2 = "Thm2"
    THM3 = "Thm3"
    COR2 = "Cor2"
    COR3 = "Cor3"
    COR4 = "Cor4"
    THM4 = "Thm4"
    THM5 = "Thm5"
    COR5 = "Cor5"


class InfeasibilityReason(str, Enum):
    NOT_HURWITZ = "NotHurwitz"
    NOT_SCHUR = "NotSchur"
    NECESSITY_VIOLATED = "NecessityViolated"
    MARGIN_TOO_SMALL = "MarginTooSmall"
    PRECONDITION_VIOLATED = "PreconditionViolated"
    CONDITION_VIOLATED = "ConditionViolated"


class WitnessMethod(str, Enum):
    PERRON_EIGENVECTOR = "PerronEigenvector"
    PERTURBED_PERRON = "PerturbedPerron"
    SUPPLIED = "Supplied"


def _vector(values, name: str) -> np.ndarray:
    vector = np.array(values, dtype=float).reshape(-1)
    vector.setflags(write=False)
    return vector


def _positive_vector(values, name: str) -> np.ndarray:
    vector = _vector(values, name)
    if vector.size == 0 or not np.all(np.isfinite(vector)) or np.any(vector <= 0):
        raise SystemSpecError(f"{name} must be a strictly positive vector, got {vector.tolist()}")
    return vector


@dataclass(frozen=True)
class Infeasible:
    """A criterion could not be satisfied; falsy so ``if result:`` reads naturally."""

    reason: InfeasibilityReason
    message: str
    value: Optional[float] = None

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> dict:
        payload = {"status": "infeasible", "reason": self.reason.value, "message": self.message}
        if self.value is not None:
            payload["value"] = float(self.value)
        return payload


@dataclass(frozen=True, eq=False)
class WitnessResult:
    """Positive vector xi certifying a linear inequality, l1-normalised."""

    xi: np.ndarray
    margin: float
    iterations: int
    method: WitnessMethod
    perron_root: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "xi", _positive_vector(self.xi, "xi"))

    def to_dict(self) -> dict:
        return {
            "xi": self.xi.tolist(),
            "margin": float(self.margin),
            "iterations": int(self.iterations),
            "method": self.method.value,
            "perron_root": None if self.perron_root is None else float(self.perron_root),
        }


@dataclass(frozen=True, eq=False)
class ConditionCheck:
    """Outcome of checking a criterion's vector inequality ``condition <= bound``.

    ``condition`` and ``bound`` are taken at the worst point of the evidence set. The
    criterion holds when ``condition - bound`` stays below ``tolerance`` everywhere;
    ``margin`` is minus the largest entry of that difference.
    """

    holds: bool
    margin: float
    worst: float
    condition: np.ndarray
    bound: np.ndarray
    evidence: EvidenceMode
    tolerance: float

    def __bool__(self) -> bool:
        return self.holds

    @property
    def worst_t(self) -> float:
        return self.worst

    @property
    def worst_k(self) -> int:
        return int(round(self.worst))


@dataclass(frozen=True, eq=False)
class DecayProfile:
    """Per-row roots alpha_i of g_i(alpha) = 0 and their minimum."""

    alphas: np.ndarray
    alpha_max: float
    binding_index: int

    def to_dict(self) -> dict:
        return {
            "alphas": self.alphas.tolist(),
            "alpha_max": float(self.alpha_max),
            "binding_row": self.binding_index + 1,
        }


@dataclass(frozen=True, eq=False)
class LambdaProfile:
    """Per-row roots lambda_i of g_i(lambda) = 0 and their maximum."""

    lambdas: np.ndarray
    lambda_max: float
    binding_index: int
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "lambdas": self.lambdas.tolist(),
            "lambda_max": float(self.lambda_max),
            "binding_row": self.binding_index + 1,
            "degenerate": self.degenerate,
        }


@dataclass(frozen=True, eq=False)
class RateWindow:
    """Open window (0, alpha_sup) of decay rates for a nondelay system."""

    gamma: float
    delta0: float
    d2: float
    alpha_sup: float
    xi: np.ndarray
    evidence: EvidenceMode
    alpha: float = field(default=0.0)

    def __post_init__(self):
        if not self.gamma < 0 or not self.alpha_sup > 0:
            raise SystemSpecError("a rate window needs gamma < 0 and alpha_sup > 0")
        object.__setattr__(self, "xi", _positive_vector(self.xi, "xi"))
        if self.alpha == 0.0:
            object.__setattr__(self, "alpha", 0.9 * self.alpha_sup)
        if not 0 < self.alpha < self.alpha_sup:
            raise SystemSpecError("the exported rate must lie strictly inside the window")

    def to_dict(self) -> dict:
        return {
            "gamma": float(self.gamma),
            "delta0": float(self.delta0),
            "d2": float(self.d2),
            "alpha_sup": float(self.alpha_sup),
            "alpha": float(self.alpha),
        }


def _normalised(xi: np.ndarray, margin: float):
    total = float(np.sum(xi))
    return xi / total, margin / total


@dataclass(frozen=True, eq=False)
class ContinuousCertificate:
    """Witness xi and decay rate alpha for a continuous-time criterion.

    xi is stored l1-normalised; the margin is rescaled with it.
    """

    xi: np.ndarray
    alpha: float
    criterion: Criterion
    margin: float
    evidence: EvidenceMode
    worst_t: float = 0.0
    profile: Optional[DecayProfile] = None
    window: Optional[RateWindow] = None

    def __post_init__(self):
        xi = _positive_vector(self.xi, "xi")
        xi, margin = _normalised(xi, float(self.margin))
        xi.setflags(write=False)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "margin", margin)
        if not self.alpha > 0:
            raise SystemSpecError(f"decay rate must be positive, got {self.alpha}")

    @property
    def rate(self) -> float:
        return self.alpha

    def to_dict(self) -> dict:
        payload = {
            "status": "certified",
            "time": "continuous",
            "criterion": self.criterion.value,
            "xi": self.xi.tolist(),
            "alpha": float(self.alpha),
            "margin": float(self.margin),
            "worst_t": float(self.worst_t),
            "evidence": self.evidence.value,
        }
        if self.profile is not None:
            payload["profile"] = self.profile.to_dict()
        if self.window is not None:
            payload["window"] = self.window.to_dict()
        return payload

    @classmethod
    def from_dict(cls, payload: dict) -> "ContinuousCertificate":
        try:
            return cls(
                xi=payload["xi"],
                alpha=float(payload["alpha"]),
                criterion=Criterion(payload.get("criterion", Criterion.THM1.value)),
                margin=float(payload.get("margin", 0.0)),
                evidence=EvidenceMode(payload.get("evidence", EvidenceMode.USER_BOUNDS.value)),
                worst_t=float(payload.get("worst_t", 0.0)),
            )
        except (KeyError, ValueError, TypeError) as e:
            raise SystemSpecError(f"malformed continuous certificate: {e}") from e


@dataclass(frozen=True, eq=False)
class DiscreteCertificate:
    """Witness xi and convergence rate lambda in (0, 1) for a discrete-time criterion."""

    xi: np.ndarray
    lam: float
    criterion: Criterion
    margin: float
    evidence: EvidenceMode
    worst_k: int = 0
    profile: Optional[LambdaProfile] = None

    def __post_init__(self):
        xi = _positive_vector(self.xi, "xi")
        xi, margin = _normalised(xi, float(self.margin))
        xi.setflags(write=False)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "margin", margin)
        if not 0 < self.lam < 1:
            raise SystemSpecError(f"convergence rate must lie in (0, 1), got {self.lam}")

    @property
    def rate(self) -> float:
        return self.lam

    def to_dict(self) -> dict:
        payload = {
            "status": "certified",
            "time": "discrete",
            "criterion": self.criterion.value,
            "xi": self.xi.tolist(),
            "lambda": float(self.lam),
            "margin": float(self.margin),
            "worst_k": int(self.worst_k),
            "evidence": self.evidence.value,
        }
        if self.profile is not None:
            payload["profile"] = self.profile.to_dict()
        return payload

    @classmethod
    def from_dict(cls, payload: dict) -> "DiscreteCertificate":
        try:
            return cls(
                xi=payload["xi"],
                lam=float(payload["lambda"]),
                criterion=Criterion(payload.get("criterion", Criterion.THM4.value)),
                margin=float(payload.get("margin", 0.0)),
                evidence=EvidenceMode(payload.get("evidence", EvidenceMode.USER_BOUNDS.value)),
                worst_k=int(payload.get("worst_k", 0)),
            )
        except (KeyError, ValueError, TypeError) as e:
            raise SystemSpecError(f"malformed discrete certificate: {e}") from e


def certificate_from_dict(payload: dict):
    """Rebuild a certificate from its report dictionary."""
    if "lambda" in payload:
        return DiscreteCertificate.from_dict(payload)
    if "alpha" in payload:
        return ContinuousCertificate.from_dict(payload)
    raise SystemSpecError("certificate carries neither 'alpha' nor 'lambda'")
