"""Main API module for persidskii_aes.

High-level entry points that pick the time domain from the system and hand off to the
certifier services, the simulator and the Monte-Carlo harness. The CLI is built on these.
"""

from typing import Optional, Sequence, Union

import numpy as np

from .criteria import ContinuousCertifier, DiscreteCertifier
from .errors import SystemSpecError
from .models import (
    ContinuousCertificate,
    ContinuousSystem,
    DecayProfile,
    DiscreteCertificate,
    DiscreteSystem,
    Infeasible,
    LambdaProfile,
    SectorBounds,
)
from .models.tolerances import ENVELOPE_SLACK
from .simulation import (
    DEFAULT_STEP,
    InitialHistory,
    SimulationTrace,
    ValidationReport,
    integrate_dde,
    iterate_discrete,
    monte_carlo_validate,
    sample_history,
    sample_nonlinearity,
)

System = Union[ContinuousSystem, DiscreteSystem]
Certificate = Union[ContinuousCertificate, DiscreteCertificate]


def _certifier(system: System, grid: Optional[Sequence[float]], grid_t_max, grid_step):
    if isinstance(system, DiscreteSystem):
        return get_discrete_certifier(k_grid=grid, k_max=None if grid_t_max is None else int(grid_t_max))
    return get_continuous_certifier(t_grid=grid, grid_t_max=grid_t_max, grid_step=grid_step)


def certify_system(
    system: System,
    sector: SectorBounds,
    xi: Optional[Sequence[float]] = None,
    rate: Optional[float] = None,
    grid: Optional[Sequence[float]] = None,
    grid_t_max: Optional[float] = None,
    grid_step: Optional[float] = None,
) -> Union[Certificate, Infeasible]:
    """Certify a system with the strongest applicable criterion.

    Args:
        system: Continuous or discrete system
        sector: Sector of the nonlinearity
        xi: Optional witness; searched when None
        rate: Optional alpha (continuous) or lambda (discrete) to check with ``xi``
        grid: Explicit evidence grid
        grid_t_max: End of the default evidence grid (last step in discrete time)
        grid_step: Step of the default continuous evidence grid

    Returns:
        A certificate, or Infeasible with a reason
    """
    certifier = _certifier(system, grid, grid_t_max, grid_step)
    if isinstance(system, DiscreteSystem):
        return certifier.certify(system, sector, xi=xi, lam=rate)
    return certifier.certify(system, sector, xi=xi, alpha=rate)


def decay_rate(
    system: System,
    sector: SectorBounds,
    xi: Optional[Sequence[float]] = None,
    grid: Optional[Sequence[float]] = None,
    grid_t_max: Optional[float] = None,
    grid_step: Optional[float] = None,
) -> Union[DecayProfile, LambdaProfile, Infeasible]:
    """Per-row maximal rates for a supplied or searched witness."""
    certifier = _certifier(system, grid, grid_t_max, grid_step)
    if isinstance(system, DiscreteSystem):
        return certifier.lambda_profile(system, sector, xi)
    return certifier.decay_profile(system, sector, xi)


def simulate(
    system: System,
    sector: SectorBounds,
    seed: int = 0,
    horizon: Optional[float] = None,
    step: float = DEFAULT_STEP,
    f=None,
    phi: Optional[InitialHistory] = None,
) -> SimulationTrace:
    """Simulate one trajectory.

    Args:
        system: Continuous or discrete system
        sector: Sector used to draw ``f`` and to check a user-supplied one
        seed: Seed for the sampled nonlinearity and history
        horizon: Simulation horizon (solver default when None)
        step: RK4 step in continuous time
        f: Nonlinearity; sampled from the sector when None
        phi: Initial history; sampled when None
    """
    f = sample_nonlinearity(sector, seed=seed) if f is None else f
    phi = sample_history(system.n, system.h_max, seed=seed) if phi is None else phi
    if isinstance(system, DiscreteSystem):
        return iterate_discrete(system, f, phi, None if horizon is None else int(np.ceil(horizon)))
    return integrate_dde(system, f, phi, horizon=horizon, step=step, sector=sector)


def validate(
    system: System,
    sector: SectorBounds,
    certificate: Certificate,
    n_nonlinearities: int = 20,
    n_histories: int = 10,
    seed: int = 0,
    horizon: Optional[float] = None,
    step: float = DEFAULT_STEP,
    slack: float = ENVELOPE_SLACK,
) -> ValidationReport:
    """Monte-Carlo falsification of ``certificate``; see ``monte_carlo_validate``."""
    if isinstance(certificate, Infeasible):
        raise SystemSpecError("cannot validate an infeasible result")
    return monte_carlo_validate(
        system,
        sector,
        certificate,
        n_nonlinearities=n_nonlinearities,
        n_histories=n_histories,
        seed=seed,
        horizon=horizon,
        step=step,
        slack=slack,
    )


# Factory functions for certifier services

def get_continuous_certifier(
    t_grid: Optional[Sequence[float]] = None,
    grid_t_max: Optional[float] = None,
    grid_step: Optional[float] = None,
) -> ContinuousCertifier:
    """Get a continuous-time certifier.

    Args:
        t_grid: Explicit evidence grid
        grid_t_max: End of the default grid
        grid_step: Step of the default grid

    Returns:
        Configured ContinuousCertifier
    """
    return ContinuousCertifier(t_grid=t_grid, grid_t_max=grid_t_max, grid_step=grid_step)


def get_discrete_certifier(
    k_grid: Optional[Sequence[float]] = None, k_max: Optional[int] = None
) -> DiscreteCertifier:
    """Get a discrete-time certifier.

    Args:
        k_grid: Explicit steps to check
        k_max: Last step of the default grid

    Returns:
        Configured DiscreteCertifier
    """
    return DiscreteCertifier(k_grid=k_grid, k_max=k_max)
