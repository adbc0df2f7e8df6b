"""Fixed-step RK4 with the method of steps for delay differential equations.

The step is shrunk to h_min / ceil(h_min / step) so that the shortest delay is a whole
number of steps. Delayed states on the grid are read from the stored trajectory; between
grid points (RK4 midpoint stages, or delays that are not step multiples) they come from
the cubic Hermite interpolant built on the stored values and derivatives. Times at or before
zero read the initial history. Several runs integrate together as rows of one (runs, n)
state.
"""

import math
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from ..errors import IntegrationError, SystemSpecError
from ..models.matrices import MatrixLike, is_constant_matrix, matrix_at, matrix_on_grid
from ..models.sector import SectorBounds
from ..models.system import ContinuousSystem
from ..utils import console
from .history import InitialHistory
from .nonlinearity import (
    GeneralizedNonlinearity,
    NonlinearitySample,
    TabulatedNonlinearity,
    require_membership,
    stack_parameters,
)
from .trace import SimulationTrace

DEFAULT_STEP = 1e-3

_SNAP = 1e-9


def adjusted_step(delays: Sequence[float], step: float) -> float:
    """Largest step not exceeding ``step`` that divides the shortest delay."""
    if not step > 0:
        raise SystemSpecError(f"step must be positive, got {step}")
    if not delays:
        return float(step)
    h_min = min(delays)
    return h_min / math.ceil(h_min / step - _SNAP)


def default_horizon(h_max: float) -> float:
    return 10.0 * h_max if h_max > 0 else 10.0


def _hermite(x0, x1, d0, d1, theta: float, step: float):
    theta2 = theta * theta
    theta3 = theta2 * theta
    return (
        (2 * theta3 - 3 * theta2 + 1) * x0
        + (theta3 - 2 * theta2 + theta) * step * d0
        + (-2 * theta3 + 3 * theta2) * x1
        + (theta3 - theta2) * step * d1
    )


def _tabulate(matrix: MatrixLike, half_times: np.ndarray, gains) -> np.ndarray:
    """Constant (n, n) matrix, or values on the half-step grid, times the gains if any."""
    if is_constant_matrix(matrix):
        values = matrix_at(matrix, 0.0)
    else:
        values = matrix_on_grid(matrix, half_times)
    if gains is None:
        return values
    gain_values = matrix_at(gains, 0.0) if is_constant_matrix(gains) else matrix_on_grid(gains, half_times)
    return values * gain_values


def _batch_function(nonlinearities: Sequence) -> Callable[[np.ndarray], np.ndarray]:
    if all(isinstance(f, NonlinearitySample) for f in nonlinearities):
        return stack_parameters(nonlinearities).evaluate
    if all(f is nonlinearities[0] for f in nonlinearities):
        return nonlinearities[0].evaluate
    return lambda x: np.stack([f.evaluate(row) for f, row in zip(nonlinearities, x)])


def integrate_dde_batch(
    system: ContinuousSystem,
    nonlinearities: Sequence[Union[NonlinearitySample, TabulatedNonlinearity]],
    histories: Sequence[InitialHistory],
    horizon: Optional[float] = None,
    step: float = DEFAULT_STEP,
    gains: Optional[MatrixLike] = None,
) -> List[SimulationTrace]:
    """Integrate one run per (nonlinearity, history) pair in a single vectorised sweep.

    Args:
        system: Continuous-time system
        nonlinearities: One nonlinearity per run
        histories: One initial history per run
        horizon: End time (default 10 h_max, or 10 without delays)
        step: Requested step; shrunk to divide the shortest delay
        gains: Optional G(t); the coefficients then act as A o G and B_l o G

    Returns:
        One SimulationTrace per run

    Raises:
        IntegrationError: A state became non-finite
    """
    if len(nonlinearities) != len(histories) or not histories:
        raise SystemSpecError("need one nonlinearity per history and at least one run")
    n = system.n
    for phi in histories:
        if phi.n != n:
            raise SystemSpecError(f"history has dimension {phi.n}, system has {n}")
    hs = system.delay_values
    h_max = system.h_max
    step = adjusted_step(hs, step)
    horizon = default_horizon(h_max) if horizon is None else float(horizon)
    if not horizon > 0:
        raise SystemSpecError("horizon must be positive")
    if hs and horizon < 5 * h_max:
        console.warning(f"horizon {horizon:g} is shorter than 5 h_max = {5 * h_max:g}")

    runs = len(histories)
    steps = int(math.ceil(horizon / step - _SNAP))
    times = np.arange(steps + 1) * step
    half_times = np.arange(2 * steps + 1) * (step / 2)
    a_table = _tabulate(system.a, half_times, gains)
    b_tables = [_tabulate(term.b, half_times, gains) for term in system.delays]
    ratios = []
    for h in hs:
        ratio = h / step
        ratios.append(float(round(ratio)) if abs(ratio - round(ratio)) < _SNAP * max(1.0, ratio) else ratio)

    history_count = int(math.ceil(2 * h_max / step - _SNAP)) + 1
    thetas = -np.arange(history_count) * (step / 2)
    history_table = np.stack([phi.evaluate(thetas) for phi in histories], axis=1)

    f = _batch_function(nonlinearities)
    states = np.empty((steps + 1, runs, n))
    slopes = np.empty_like(states)
    states[0] = history_table[0]

    def matrix(table: np.ndarray, half: int) -> np.ndarray:
        return table if table.ndim == 2 else table[half]

    def delayed(position: float) -> np.ndarray:
        """State at time position * step for position <= the current step."""
        if position <= _SNAP:
            doubled = -2.0 * position
            k = int(round(doubled))
            if abs(doubled - k) < _SNAP and k < history_count:
                return history_table[k]
            theta = position * step
            return np.stack([phi.evaluate(theta) for phi in histories])
        j = int(math.floor(position + _SNAP))
        theta = position - j
        if theta < _SNAP:
            return states[j]
        if theta > 1.0 - _SNAP:
            return states[j + 1]
        return _hermite(states[j], states[j + 1], slopes[j], slopes[j + 1], theta, step)

    cache = {}

    def delay_terms(half: int) -> Union[np.ndarray, float]:
        if half not in cache:
            total = 0.0
            for ratio, table in zip(ratios, b_tables):
                total = total + f(delayed(half / 2.0 - ratio)) @ matrix(table, half).T
            cache.clear()
            cache[half] = total
        return cache[half]

    def rhs(half: int, x: np.ndarray) -> np.ndarray:
        return f(x) @ matrix(a_table, half).T + delay_terms(half)

    with np.errstate(over="ignore", invalid="ignore"):
        for index in range(steps):
            half = 2 * index
            x = states[index]
            k1 = rhs(half, x)
            slopes[index] = k1
            k2 = rhs(half + 1, x + (step / 2) * k1)
            k3 = rhs(half + 1, x + (step / 2) * k2)
            k4 = rhs(half + 2, x + step * k3)
            nxt = x + (step / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
            if not np.all(np.isfinite(nxt)):
                bad = sorted({int(r) for r in np.argwhere(~np.isfinite(nxt))[:, 0]})
                raise IntegrationError(
                    f"state became non-finite at t={times[index + 1]:g} in run(s) {bad[:5]}"
                )
            states[index + 1] = nxt

    return [
        SimulationTrace(times=times, states=states[:, r, :].copy(), norm_phi=phi.norm())
        for r, phi in enumerate(histories)
    ]


def integrate_dde(
    system: ContinuousSystem,
    f: Union[NonlinearitySample, TabulatedNonlinearity, GeneralizedNonlinearity],
    phi: InitialHistory,
    horizon: Optional[float] = None,
    step: float = DEFAULT_STEP,
    sector: Optional[SectorBounds] = None,
) -> SimulationTrace:
    """Integrate a single run; see ``integrate_dde_batch``.

    A GeneralizedNonlinearity contributes its gains; a TabulatedNonlinearity is checked
    against ``sector`` first when one is given.
    """
    gains = None
    if isinstance(f, GeneralizedNonlinearity):
        gains, f = f.gains, f.base
    if isinstance(f, TabulatedNonlinearity) and sector is not None:
        require_membership(f, sector)
    return integrate_dde_batch(system, [f], [phi], horizon=horizon, step=step, gains=gains)[0]
