"""Constant and time-varying coefficient matrices and the elementary transformations on them."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import SystemSpecError
from ..expr import Expression, parse

MatrixEntry = Union[float, Expression]


@dataclass(frozen=True, eq=False)
class MatrixExpr:
    """Square matrix whose entries are constants or expressions in ``t``."""

    entries: Tuple[Tuple[MatrixEntry, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[float, int, str, Expression]]]) -> "MatrixExpr":
        """Build from nested rows of numbers, expression strings or Expressions.

        Expressions without ``t`` are folded to plain floats.
        """
        parsed = []
        for row in rows:
            parsed_row = []
            for entry in row:
                if isinstance(entry, str):
                    entry = parse(entry)
                if isinstance(entry, Expression):
                    if entry.is_constant:
                        entry = entry.evaluate(0.0)
                    parsed_row.append(entry)
                    continue
                if isinstance(entry, bool) or not isinstance(entry, (int, float, np.floating, np.integer)):
                    raise SystemSpecError(f"matrix entry {entry!r} is neither a number nor an expression")
                parsed_row.append(float(entry))
            parsed.append(tuple(parsed_row))
        n = len(parsed)
        if n == 0 or any(len(row) != n for row in parsed):
            raise SystemSpecError("matrix must be square and nonempty")
        for row in parsed:
            for entry in row:
                if isinstance(entry, float) and not np.isfinite(entry):
                    raise SystemSpecError("matrix entries must be finite")
        return cls(tuple(parsed))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def is_constant(self) -> bool:
        return all(not isinstance(entry, Expression) for row in self.entries for entry in row)

    def evaluate(self, t: float) -> np.ndarray:
        """Matrix value at time ``t``."""
        out = np.empty((self.n, self.n))
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                out[i, j] = entry.evaluate(t) if isinstance(entry, Expression) else entry
        return out

    def evaluate_grid(self, times: Sequence[float]) -> np.ndarray:
        """Matrix values on a time grid, shape (len(times), n, n)."""
        times = np.asarray(times, dtype=float)
        out = np.empty((times.size, self.n, self.n))
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                out[:, i, j] = entry.evaluate(times) if isinstance(entry, Expression) else entry
        return out

    def to_json(self) -> list:
        return [
            [entry.source if isinstance(entry, Expression) else entry for entry in row]
            for row in self.entries
        ]


MatrixLike = Union[MatrixExpr, np.ndarray]


def as_const_matrix(values, name: str = "matrix") -> np.ndarray:
    """Validate and convert to a finite square float matrix."""
    if isinstance(values, MatrixExpr):
        if not values.is_constant:
            raise SystemSpecError(f"{name} depends on t; a constant matrix is required")
        return values.evaluate(0.0)
    matrix = np.array(values, dtype=float)
    if matrix.ndim == 0:
        matrix = matrix.reshape(1, 1)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.size == 0:
        raise SystemSpecError(f"{name} must be a nonempty square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise SystemSpecError(f"{name} contains non-finite entries")
    return matrix


def as_matrix_like(values, name: str = "matrix") -> MatrixLike:
    """Accept a MatrixExpr, array, or nested rows (strings allowed) and normalise it."""
    if isinstance(values, MatrixExpr):
        return values.evaluate(0.0) if values.is_constant else values
    if isinstance(values, np.ndarray):
        return as_const_matrix(values, name)
    if np.ndim(values) == 0 and not isinstance(values, str):
        return as_const_matrix(values, name)
    matrix = MatrixExpr.from_rows(values)
    return matrix.evaluate(0.0) if matrix.is_constant else matrix


def matrix_dim(m: MatrixLike) -> int:
    return m.n if isinstance(m, MatrixExpr) else m.shape[0]


def is_constant_matrix(m: MatrixLike) -> bool:
    return not isinstance(m, MatrixExpr) or m.is_constant


def matrix_at(m: MatrixLike, t: float) -> np.ndarray:
    """Value of a constant or time-varying matrix at ``t``."""
    return m.evaluate(t) if isinstance(m, MatrixExpr) else m


def matrix_on_grid(m: MatrixLike, times: Sequence[float]) -> np.ndarray:
    """Stacked values on a grid, shape (len(times), n, n)."""
    times = np.asarray(times, dtype=float)
    if isinstance(m, MatrixExpr):
        return m.evaluate_grid(times)
    return np.broadcast_to(m, (times.size,) + m.shape).copy()


def metzlerize(m: np.ndarray) -> np.ndarray:
    """Keep the diagonal, take absolute values off the diagonal.

    Works on a single (n, n) matrix or a stack (..., n, n).
    """
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise SystemSpecError("cannot metzlerize a matrix with non-finite entries")
    out = np.abs(m)
    diagonal = np.arange(m.shape[-1])
    out[..., diagonal, diagonal] = m[..., diagonal, diagonal]
    return out


def entrywise_abs(m: np.ndarray) -> np.ndarray:
    """Entrywise absolute value |m|."""
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise SystemSpecError("matrix contains non-finite entries")
    return np.abs(m)


def sup_on_grid(m: MatrixLike, t_grid: Sequence[float], metzler: bool = False) -> np.ndarray:
    """Entrywise supremum over a time grid.

    This is grid evidence, not a proof that the bound holds for every t.

    Args:
        m: Constant or time-varying matrix
        t_grid: Nonempty grid of times
        metzler: Take the supremum of the Metzlerized matrix (for A) instead of |m| (for B)

    Returns:
        Constant matrix dominating the transformed entries at every grid point
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size == 0:
        raise SystemSpecError("sup_on_grid needs a nonempty grid")
    values = matrix_on_grid(m, t_grid)
    transformed = metzlerize(values) if metzler else np.abs(values)
    return transformed.max(axis=0)


def is_metzler(m: np.ndarray) -> bool:
    m = np.asarray(m, dtype=float)
    off_diagonal = ~np.eye(m.shape[0], dtype=bool)
    return bool(np.all(m[off_diagonal] >= 0))


def is_nonnegative(m: np.ndarray) -> bool:
    return bool(np.all(np.asarray(m, dtype=float) >= 0))


def default_time_grid(
    h_max: float, t_max: Optional[float] = None, step: Optional[float] = None
) -> np.ndarray:
    """Evidence grid for continuous time: [0, 10 h_max] with step h_max/100 by default."""
    scale = h_max if h_max > 0 else 1.0
    t_max = 10.0 * scale if t_max is None else float(t_max)
    step = scale / 100.0 if step is None else float(step)
    if t_max < 0 or step <= 0:
        raise SystemSpecError("grid needs t_max >= 0 and step > 0")
    count = int(np.floor(t_max / step + 1e-9)) + 1
    return np.arange(count) * step


def default_step_grid(h_max: int, k_max: Optional[int] = None) -> np.ndarray:
    """Evidence grid for discrete time: k in {0, ..., 100 max(1, h_max)} by default."""
    k_max = 100 * max(1, int(h_max)) if k_max is None else int(k_max)
    if k_max < 0:
        raise SystemSpecError("k_max must be nonnegative")
    return np.arange(k_max + 1, dtype=float)


__all__ = [
    "MatrixExpr",
    "MatrixLike",
    "as_const_matrix",
    "as_matrix_like",
    "matrix_dim",
    "is_constant_matrix",
    "matrix_at",
    "matrix_on_grid",
    "metzlerize",
    "entrywise_abs",
    "sup_on_grid",
    "is_metzler",
    "is_nonnegative",
    "default_time_grid",
    "default_step_grid",
]
