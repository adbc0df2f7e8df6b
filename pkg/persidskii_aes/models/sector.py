"""Sector bounds describing the admissible class of diagonal nonlinearities."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from ..errors import SystemSpecError


class SectorKind(str, Enum):
    """Which sector family the bounds describe."""

    BOUNDED = "bounded"  # delta_i x^2 <= x f_i(x) <= beta_i x^2
    POSITIVE_UP_TO = "positive_up_to"  # 0 < x f_i(x) <= beta_i x^2
    BOUNDED_BELOW = "bounded_below"  # delta_i x^2 <= x f_i(x), no upper slope


def _positive_vector(values: Sequence[float], name: str) -> np.ndarray:
    vector = np.array(values, dtype=float).reshape(-1)
    if vector.size == 0:
        raise SystemSpecError(f"{name} must be a nonempty vector")
    if not np.all(np.isfinite(vector)) or np.any(vector <= 0):
        raise SystemSpecError(f"{name} must contain finite positive numbers, got {vector.tolist()}")
    vector.setflags(write=False)
    return vector


@dataclass(frozen=True, eq=False)
class SectorBounds:
    """Slopes delta (lower) and beta (upper) of a diagonal sector nonlinearity.

    Use the ``bounded``, ``positive_up_to`` and ``bounded_below`` constructors rather than
    building instances directly.
    """

    beta: Optional[np.ndarray]
    delta: Optional[np.ndarray]
    kind: SectorKind

    @classmethod
    def bounded(cls, delta: Sequence[float], beta: Sequence[float]) -> "SectorBounds":
        """Sector K[delta, beta] with 0 < delta_i <= beta_i."""
        delta_vec = _positive_vector(delta, "delta")
        beta_vec = _positive_vector(beta, "beta")
        if delta_vec.shape != beta_vec.shape:
            raise SystemSpecError(
                f"delta and beta differ in length ({delta_vec.size} vs {beta_vec.size})"
            )
        if np.any(delta_vec > beta_vec):
            raise SystemSpecError("sector requires delta_i <= beta_i for every i")
        return cls(beta=beta_vec, delta=delta_vec, kind=SectorKind.BOUNDED)

    @classmethod
    def positive_up_to(cls, beta: Sequence[float]) -> "SectorBounds":
        """Sector K(0, beta] used by difference systems."""
        return cls(beta=_positive_vector(beta, "beta"), delta=None, kind=SectorKind.POSITIVE_UP_TO)

    @classmethod
    def bounded_below(cls, delta: Sequence[float]) -> "SectorBounds":
        """Sector K[delta, inf), read as delta_i x^2 <= x f_i(x) with no upper slope."""
        return cls(beta=None, delta=_positive_vector(delta, "delta"), kind=SectorKind.BOUNDED_BELOW)

    @property
    def n(self) -> int:
        return int((self.delta if self.delta is not None else self.beta).size)

    @property
    def d_delta(self) -> np.ndarray:
        """Diagonal matrix of lower slopes."""
        if self.delta is None:
            raise SystemSpecError(f"sector kind {self.kind.value} has no lower slope delta")
        return np.diag(self.delta)

    @property
    def d_beta(self) -> np.ndarray:
        """Diagonal matrix of upper slopes."""
        if self.beta is None:
            raise SystemSpecError(f"sector kind {self.kind.value} has no upper slope beta")
        return np.diag(self.beta)

    def require(self, *kinds: SectorKind) -> None:
        """Raise unless the sector is one of ``kinds``."""
        if self.kind not in kinds:
            expected = ", ".join(kind.value for kind in kinds)
            raise SystemSpecError(f"sector kind {self.kind.value} given, expected {expected}")

    def contains(self, x: np.ndarray, fx: np.ndarray, rtol: float = 1e-12) -> bool:
        """Check sector membership of sampled values.

        Args:
            x: Sample points, shape (..., n)
            fx: Nonlinearity values at the sample points, same shape
            rtol: Relative slack on the quadratic bounds

        Returns:
            True when every sample with x_i != 0 lies inside the sector and f_i(0) = 0
        """
        x = np.asarray(x, dtype=float)
        fx = np.asarray(fx, dtype=float)
        if x.shape != fx.shape or x.shape[-1] != self.n:
            raise SystemSpecError("sample arrays must share shape (..., n)")
        if not np.all(np.isfinite(fx)):
            return False
        product = x * fx
        square = x * x
        nonzero = x != 0
        if np.any(fx[~nonzero] != 0):
            return False
        if self.kind == SectorKind.POSITIVE_UP_TO:
            lower_ok = product[nonzero] > 0
        else:
            lower_ok = product >= (self.delta * square) * (1 - rtol)
            lower_ok = lower_ok[nonzero]
        if self.beta is None:
            upper_ok = np.ones_like(lower_ok, dtype=bool)
        else:
            upper_ok = (product <= (self.beta * square) * (1 + rtol))[nonzero]
        return bool(np.all(lower_ok) and np.all(upper_ok))

    def to_dict(self) -> dict:
        payload = {}
        if self.delta is not None:
            payload["delta"] = self.delta.tolist()
        if self.beta is not None:
            payload["beta"] = self.beta.tolist()
        return payload
