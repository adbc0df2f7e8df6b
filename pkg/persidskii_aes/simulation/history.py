"""Initial functions phi on [-h, 0] (or on the integers -h..0 in discrete time)."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from ..errors import SystemSpecError


class HistoryKind(str, Enum):
    CONSTANT = "Constant"
    SINUSOID = "Sinusoid"
    RANDOM_PIECEWISE_LINEAR = "RandomPiecewiseLinear"


def _vector(values, name: str) -> np.ndarray:
    vector = np.array(values, dtype=float).reshape(-1)
    if vector.size == 0 or not np.all(np.isfinite(vector)):
        raise SystemSpecError(f"{name} must be a nonempty finite vector")
    vector.setflags(write=False)
    return vector


@dataclass(frozen=True, eq=False)
class InitialHistory:
    """Initial data phi(theta), theta in [-h, 0].

    Constant:               phi(theta) = values
    Sinusoid:               phi(theta) = values * cos(frequency * theta)
    RandomPiecewiseLinear:  linear interpolation of ``knot_values`` at ``knot_times``
    """

    kind: HistoryKind
    values: np.ndarray
    h: float = 0.0
    frequency: float = 0.0
    knot_times: Optional[np.ndarray] = None
    knot_values: Optional[np.ndarray] = None
    seed: Optional[int] = None

    @classmethod
    def constant(cls, values: Sequence[float], h: float = 0.0) -> "InitialHistory":
        return cls(HistoryKind.CONSTANT, _vector(values, "history values"), float(h))

    @classmethod
    def sinusoid(cls, amplitude: Sequence[float], frequency: float, h: float = 0.0) -> "InitialHistory":
        return cls(HistoryKind.SINUSOID, _vector(amplitude, "amplitude"), float(h), float(frequency))

    @classmethod
    def random_piecewise_linear(
        cls, n: int, h: float, seed: int, knots: int = 5, scale: float = 1.0
    ) -> "InitialHistory":
        rng = np.random.default_rng(seed)
        count = 1 if h <= 0 else max(2, int(knots))
        times = np.linspace(-float(h), 0.0, count)
        values = rng.uniform(-scale, scale, size=(count, n))
        return cls(
            HistoryKind.RANDOM_PIECEWISE_LINEAR,
            _vector(values[-1], "history values"),
            float(h),
            knot_times=times,
            knot_values=values,
            seed=seed,
        )

    @property
    def n(self) -> int:
        return int(self.values.size)

    def evaluate(self, theta: Union[float, np.ndarray]) -> np.ndarray:
        """phi at a scalar theta (shape (n,)) or at an array of thetas (shape (T, n))."""
        scalar = np.ndim(theta) == 0
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if self.kind == HistoryKind.CONSTANT:
            out = np.broadcast_to(self.values, (theta.size, self.n)).copy()
        elif self.kind == HistoryKind.SINUSOID:
            out = self.values[None, :] * np.cos(self.frequency * theta)[:, None]
        elif self.knot_times.size == 1:
            out = np.broadcast_to(self.knot_values[0], (theta.size, self.n)).copy()
        else:
            out = np.stack(
                [np.interp(theta, self.knot_times, self.knot_values[:, j]) for j in range(self.n)], axis=1
            )
        return out[0] if scalar else out

    __call__ = evaluate

    def norm(self, discrete: bool = False) -> float:
        """sup over the domain of the l1 norm; over the integers -h..0 when ``discrete``."""
        if discrete:
            thetas = -np.arange(int(round(self.h)) + 1, dtype=float)
            return float(np.abs(self.evaluate(thetas)).sum(axis=1).max())
        if self.kind == HistoryKind.CONSTANT:
            return float(np.abs(self.values).sum())
        if self.kind == HistoryKind.SINUSOID:
            # attained at theta = 0
            return float(np.abs(self.values).sum())
        # l1 norm is convex, so its max over a segment sits at a knot
        return float(np.abs(self.knot_values).sum(axis=1).max())

    def describe(self) -> str:
        if self.kind == HistoryKind.SINUSOID:
            return f"Sinusoid(w={self.frequency:.4g})"
        if self.kind == HistoryKind.RANDOM_PIECEWISE_LINEAR:
            return f"RandomPiecewiseLinear(seed={self.seed})"
        return "Constant"


def sample_history(
    n: int, h: float, seed: int, kind: Optional[Union[HistoryKind, str]] = None
) -> InitialHistory:
    """Draw a nonzero initial history, deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    chosen = HistoryKind(kind) if kind is not None else list(HistoryKind)[int(rng.integers(len(HistoryKind)))]
    magnitudes = rng.uniform(0.1, 1.0, size=n) * rng.choice([-1.0, 1.0], size=n)
    if chosen == HistoryKind.CONSTANT:
        return InitialHistory.constant(magnitudes, h)
    if chosen == HistoryKind.SINUSOID:
        return InitialHistory.sinusoid(magnitudes, float(rng.uniform(0.5, 3.0)), h)
    return InitialHistory.random_piecewise_linear(n, h, seed=int(rng.integers(2**31)))
