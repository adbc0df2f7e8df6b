"""Discharging "for all t" with user bounds, exact constants or grid suprema."""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import SystemSpecError
from ..models.certificate import EvidenceMode
from ..models.matrices import (
    default_step_grid,
    default_time_grid,
    is_constant_matrix,
    matrix_at,
    matrix_on_grid,
)
from ..models.system import ContinuousSystem, DiscreteSystem
from ..utils import console


def evidence_grid(system, grid: Optional[Sequence[float]] = None) -> np.ndarray:
    """The caller's grid, or the default one for the system's time domain."""
    if grid is None:
        if isinstance(system, DiscreteSystem):
            return default_step_grid(system.h_max)
        return default_time_grid(system.h_max)
    grid = np.asarray(grid, dtype=float).reshape(-1)
    if grid.size == 0 or not np.all(np.isfinite(grid)) or np.any(grid < 0):
        raise SystemSpecError("evidence grid must be a nonempty set of finite times >= 0")
    return grid


def combine(*modes: EvidenceMode) -> EvidenceMode:
    if EvidenceMode.GRID_EVIDENCE in modes:
        return EvidenceMode.GRID_EVIDENCE
    return EvidenceMode.USER_BOUNDS


def _warn_grid(what: str, grid: np.ndarray) -> None:
    console.warning(
        f"{what} is time-varying without a user bound; "
        f"checked on the grid [{grid[0]:g}, {grid[-1]:g}] ({grid.size} points) only"
    )


def a_view_on_grid(system, grid: np.ndarray) -> Tuple[np.ndarray, np.ndarray, EvidenceMode]:
    """Values of the Metzlerized A(t) (continuous) or |A(k)| (discrete) to check against.

    Constant matrices and user bounds are evaluated once, at the first grid point.

    Returns:
        (times, stack of shape (len(times), n, n), evidence mode)
    """
    first = grid[:1]
    if system.bounds is not None and system.bounds.a is not None:
        return first, system.bounds.a[None, :, :], EvidenceMode.USER_BOUNDS
    if is_constant_matrix(system.a):
        return first, system.a_view(matrix_at(system.a, 0.0))[None, :, :], EvidenceMode.USER_BOUNDS
    _warn_grid("A", grid)
    return grid, system.a_view(matrix_on_grid(system.a, grid)), EvidenceMode.GRID_EVIDENCE


def a_sup(system, grid: np.ndarray) -> Tuple[np.ndarray, EvidenceMode]:
    """Constant matrix dominating the A-view for every t (or every grid point)."""
    _, stack, mode = a_view_on_grid(system, grid)
    return stack.max(axis=0), mode


def b_on_grid(system, index: int, grid: np.ndarray) -> Tuple[np.ndarray, np.ndarray, EvidenceMode]:
    """Values of |B_l| to check against: user bound, exact constant or per-point values."""
    bound = None if system.bounds is None else system.bounds.b_for(index)
    first = grid[:1]
    if bound is not None:
        return first, bound[None, :, :], EvidenceMode.USER_BOUNDS
    b = system.delays[index].b
    if is_constant_matrix(b):
        return first, np.abs(matrix_at(b, 0.0))[None, :, :], EvidenceMode.USER_BOUNDS
    _warn_grid(f"B_{index + 1}", grid)
    return grid, np.abs(matrix_on_grid(b, grid)), EvidenceMode.GRID_EVIDENCE


def b_sups(system, grid: np.ndarray) -> Tuple[List[np.ndarray], EvidenceMode]:
    """Constant bounds B-bar_l for every delay, with the combined evidence mode."""
    matrices, modes = [], []
    for index in range(len(system.delays)):
        _, stack, mode = b_on_grid(system, index, grid)
        matrices.append(stack.max(axis=0))
        modes.append(mode)
    return matrices, combine(*modes)


def check_user_bounds(system, grid: np.ndarray) -> None:
    """Spot-check user bounds of a time-varying system on the evidence grid."""
    if system.bounds is not None and not system.is_constant:
        system.verify_bounds(grid)


def require_kind(system, kind) -> None:
    expected = ContinuousSystem if kind == "continuous" else DiscreteSystem
    if not isinstance(system, expected):
        raise SystemSpecError(f"a {kind} system is required, got {type(system).__name__}")
