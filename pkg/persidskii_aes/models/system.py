"""Continuous- and discrete-time delay systems driven by a diagonal nonlinearity."""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import SystemSpecError
from .matrices import (
    MatrixLike,
    as_const_matrix,
    as_matrix_like,
    is_constant_matrix,
    is_metzler,
    is_nonnegative,
    matrix_at,
    matrix_dim,
    matrix_on_grid,
    metzlerize,
)

# bounds are checked against grid values with this relative slack
_BOUND_CHECK_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class DelayTerm:
    """One delayed term B_l f(x(t - h_l))."""

    h: float
    b: MatrixLike


@dataclass(frozen=True, eq=False)
class ConstantBounds:
    """User-asserted constant bounds valid for all t.

    For continuous systems ``a`` bounds the Metzlerized A(t) from above (and must be Metzler);
    for discrete systems it bounds |A(k)|. Each ``b`` entry bounds |B_l| and must be
    nonnegative. Missing entries are None.
    """

    a: Optional[np.ndarray] = None
    b: Tuple[Optional[np.ndarray], ...] = ()

    def b_for(self, index: int) -> Optional[np.ndarray]:
        return self.b[index] if index < len(self.b) else None


@dataclass(frozen=True, eq=False)
class _DelaySystem:
    a: MatrixLike
    delays: Tuple[DelayTerm, ...] = ()
    bounds: Optional[ConstantBounds] = None
    source: Optional[dict] = field(default=None, repr=False)

    kind = "system"

    def __post_init__(self):
        object.__setattr__(self, "a", as_matrix_like(self.a, "A"))
        delays = tuple(
            term if isinstance(term, DelayTerm) else DelayTerm(*term) for term in self.delays
        )
        delays = tuple(
            DelayTerm(self._coerce_delay(term.h), as_matrix_like(term.b, f"B_{index + 1}"))
            for index, term in enumerate(delays)
        )
        object.__setattr__(self, "delays", delays)
        n = self.n
        for index, term in enumerate(delays):
            if matrix_dim(term.b) != n:
                raise SystemSpecError(f"B_{index + 1} has dimension {matrix_dim(term.b)}, expected {n}")
        hs = [term.h for term in delays]
        if any(h <= 0 for h in hs) or any(h2 <= h1 for h1, h2 in zip(hs, hs[1:])):
            raise SystemSpecError(f"delays must be positive and strictly increasing, got {hs}")
        if self.bounds is not None:
            object.__setattr__(self, "bounds", self._validated_bounds(self.bounds))

    def _coerce_delay(self, h) -> float:
        return float(h)

    def _validated_bounds(self, bounds: ConstantBounds) -> ConstantBounds:
        a = None if bounds.a is None else as_const_matrix(bounds.a, "bound on A")
        if a is not None:
            if a.shape[0] != self.n:
                raise SystemSpecError("bound on A has the wrong dimension")
            self._check_a_bound(a)
        b: List[Optional[np.ndarray]] = []
        if len(bounds.b) > len(self.delays):
            raise SystemSpecError(f"{len(bounds.b)} delay bounds given for {len(self.delays)} delays")
        for index, matrix in enumerate(bounds.b):
            if matrix is None:
                b.append(None)
                continue
            matrix = as_const_matrix(matrix, f"bound on B_{index + 1}")
            if matrix.shape[0] != self.n:
                raise SystemSpecError(f"bound on B_{index + 1} has the wrong dimension")
            if not is_nonnegative(matrix):
                raise SystemSpecError(f"bound on B_{index + 1} must be entrywise nonnegative")
            b.append(matrix)
        return ConstantBounds(a=a, b=tuple(b))

    def _check_a_bound(self, a: np.ndarray) -> None:
        raise NotImplementedError

    def a_view(self, values: np.ndarray) -> np.ndarray:
        """Transformation of A values that the A-bound dominates."""
        raise NotImplementedError

    @property
    def n(self) -> int:
        return matrix_dim(self.a)

    @property
    def delay_values(self) -> List[float]:
        return [term.h for term in self.delays]

    @property
    def h_max(self) -> float:
        return max(self.delay_values, default=0.0)

    @property
    def is_constant(self) -> bool:
        """True when A and every B_l are constant matrices."""
        return is_constant_matrix(self.a) and all(is_constant_matrix(term.b) for term in self.delays)

    def a_at(self, t: float) -> np.ndarray:
        return matrix_at(self.a, t)

    def b_at(self, index: int, t: float) -> np.ndarray:
        return matrix_at(self.delays[index].b, t)

    def verify_bounds(self, grid: Sequence[float]) -> None:
        """Spot-check the user bounds on a grid.

        Raises:
            SystemSpecError: A bound is violated at some grid point
        """
        if self.bounds is None:
            return
        grid = np.asarray(grid, dtype=float)
        checks = []
        if self.bounds.a is not None:
            checks.append(("A", self.a_view(matrix_on_grid(self.a, grid)), self.bounds.a))
        for index, term in enumerate(self.delays):
            bound = self.bounds.b_for(index)
            if bound is not None:
                checks.append((f"B_{index + 1}", np.abs(matrix_on_grid(term.b, grid)), bound))
        for name, values, bound in checks:
            slack = _BOUND_CHECK_RTOL * np.maximum(np.abs(bound), 1.0)
            violated = values > bound + slack
            if np.any(violated):
                where, i, j = np.argwhere(violated)[0]
                raise SystemSpecError(
                    f"user bound on {name} violated at t={grid[where]:g}, entry ({i + 1},{j + 1}): "
                    f"{values[where, i, j]:.6g} > {bound[i, j]:.6g}"
                )


@dataclass(frozen=True, eq=False)
class ContinuousSystem(_DelaySystem):
    """dx/dt = A(t) f(x(t)) + sum_l B_l(t) f(x(t - h_l))."""

    kind = "continuous"

    def _check_a_bound(self, a: np.ndarray) -> None:
        if not is_metzler(a):
            raise SystemSpecError("bound on the Metzlerized A(t) must be a Metzler matrix")

    def a_view(self, values: np.ndarray) -> np.ndarray:
        return metzlerize(values)

    @property
    def is_positive(self) -> bool:
        """Constant A Metzler and every constant B_l nonnegative."""
        if not self.is_constant:
            return False
        return is_metzler(self.a) and all(is_nonnegative(term.b) for term in self.delays)


@dataclass(frozen=True, eq=False)
class DiscreteSystem(_DelaySystem):
    """x(k+1) = A(k) f(x(k)) + sum_l B_l(k) f(x(k - h_l)), with integer delays."""

    kind = "discrete"

    def _coerce_delay(self, h) -> float:
        value = float(h)
        if not value.is_integer():
            raise SystemSpecError(f"discrete delays must be integers, got {h!r}")
        return int(value)

    def _check_a_bound(self, a: np.ndarray) -> None:
        if not is_nonnegative(a):
            raise SystemSpecError("bound on |A(k)| must be entrywise nonnegative")

    def a_view(self, values: np.ndarray) -> np.ndarray:
        return np.abs(values)

    @property
    def h_max(self) -> int:
        return int(max(self.delay_values, default=0))

    @property
    def is_positive(self) -> bool:
        if not self.is_constant:
            return False
        return is_nonnegative(self.a) and all(is_nonnegative(term.b) for term in self.delays)
