"""Exact iteration of the discrete-time recursion."""

from typing import List, Optional, Sequence

import numpy as np

from ..errors import IntegrationError, SystemSpecError
from ..models.system import DiscreteSystem
from ..utils import console
from .history import InitialHistory
from .trace import SimulationTrace

MIN_DISCRETE_HORIZON = 50


def default_discrete_horizon(h_max: int) -> int:
    return max(10 * int(h_max), MIN_DISCRETE_HORIZON)


def _coefficients(system: DiscreteSystem, horizon: int):
    """A(k) and every B_l(k) for k = 0..horizon-1, evaluated once."""
    if system.is_constant:
        a = system.a_at(0)
        bs = [system.b_at(l, 0) for l in range(len(system.delays))]
        return [a] * horizon, [[b] * horizon for b in bs]
    a = [system.a_at(k) for k in range(horizon)]
    bs = [[system.b_at(l, k) for k in range(horizon)] for l in range(len(system.delays))]
    return a, bs


def _resolve_horizon(system: DiscreteSystem, horizon: Optional[int]) -> int:
    h_max = system.h_max
    if horizon is None:
        return default_discrete_horizon(h_max)
    if int(horizon) != horizon or horizon < 1:
        raise SystemSpecError(f"discrete horizon must be a positive integer, got {horizon}")
    horizon = int(horizon)
    if h_max and horizon < 5 * h_max:
        console.warning(f"horizon {horizon} is shorter than 5 h_max = {5 * h_max}")
    return horizon


def _iterate(system, f, phi, horizon, a_mats, b_mats) -> SimulationTrace:
    n = system.n
    if phi.n != n:
        raise SystemSpecError(f"history has dimension {phi.n}, system has {n}")
    h_max = system.h_max
    delays = [int(term.h) for term in system.delays]
    x = np.empty((h_max + horizon + 1, n))
    x[: h_max + 1] = phi.evaluate(np.arange(-h_max, 1, dtype=float))
    for k in range(horizon):
        i = k + h_max
        acc = a_mats[k] @ f.evaluate(x[i])
        for b, h in zip(b_mats, delays):
            acc = acc + b[k] @ f.evaluate(x[i - h])
        if not np.all(np.isfinite(acc)):
            raise IntegrationError(f"state became non-finite at k={k + 1}")
        x[i + 1] = acc
    return SimulationTrace(
        times=np.arange(horizon + 1, dtype=float),
        states=x[h_max:].copy(),
        discrete=True,
        norm_phi=phi.norm(discrete=True),
    )


def iterate_discrete(
    system: DiscreteSystem, f, phi: InitialHistory, horizon: Optional[int] = None
) -> SimulationTrace:
    """x(k+1) = A(k) f(x(k)) + sum_l B_l(k) f(x(k - h_l)), with x(k) = phi(k) for k <= 0.

    Args:
        system: Discrete-time system
        f: Any nonlinearity with an ``evaluate`` method
        phi: Initial history on the integers -h_max..0
        horizon: Number of steps (default max(10 h_max, 50))
    """
    horizon = _resolve_horizon(system, horizon)
    a_mats, b_mats = _coefficients(system, horizon)
    return _iterate(system, f, phi, horizon, a_mats, b_mats)


def iterate_discrete_batch(
    system: DiscreteSystem,
    nonlinearities: Sequence,
    histories: Sequence[InitialHistory],
    horizon: Optional[int] = None,
) -> List[SimulationTrace]:
    if len(nonlinearities) != len(histories):
        raise SystemSpecError("need one nonlinearity per history")
    horizon = _resolve_horizon(system, horizon)
    a_mats, b_mats = _coefficients(system, horizon)
    return [_iterate(system, f, phi, horizon, a_mats, b_mats) for f, phi in zip(nonlinearities, histories)]
