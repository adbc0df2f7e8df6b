"""Discrete-time criteria for x(k+1) = A(k) f(x(k)) + sum_l B_l(k) f(x(k - h_l)), f in K(0, beta]."""

from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import SystemSpecError
from ..models.certificate import (
    ConditionCheck,
    Criterion,
    DiscreteCertificate,
    EvidenceMode,
    Infeasible,
    InfeasibilityReason,
    LambdaProfile,
)
from ..models.matrices import as_const_matrix, default_step_grid, is_nonnegative
from ..models.sector import SectorBounds, SectorKind
from ..models.system import DiscreteSystem
from ..models.tolerances import LAMBDA_FLOOR, ROOT_TOL, STRICT_TOL
from ..positive import find_schur_witness, verify_schur_witness
from ..utils import console
from . import evidence

DiscreteOutcome = Union[DiscreteCertificate, Infeasible]

_BISECTION_CAP = 2000


def _xi_vector(xi, n: int) -> np.ndarray:
    xi = np.array(xi, dtype=float).reshape(-1)
    if xi.shape != (n,):
        raise SystemSpecError(f"xi has length {xi.size}, expected {n}")
    if not np.all(np.isfinite(xi)) or np.any(xi <= 0):
        raise SystemSpecError("xi must be a strictly positive vector")
    return xi


def _check(system: DiscreteSystem, sector: SectorBounds, xi, lam: float, k_grid) -> ConditionCheck:
    evidence.require_kind(system, "discrete")
    sector.require(SectorKind.POSITIVE_UP_TO)
    if sector.n != system.n:
        raise SystemSpecError(f"sector has dimension {sector.n}, system has {system.n}")
    if not 0 < lam < 1:
        raise SystemSpecError(f"lambda must lie in (0, 1), got {lam}")
    xi = _xi_vector(xi, system.n)
    grid = evidence.evidence_grid(system, k_grid)
    evidence.check_user_bounds(system, grid)
    weighted = sector.beta * xi

    times, a_stack, a_mode = evidence.a_view_on_grid(system, grid)
    modes = [a_mode]
    lhs = a_stack @ weighted
    magnitude = float(a_stack.max())
    for index, h in enumerate(system.delay_values):
        b_times, b_stack, b_mode = evidence.b_on_grid(system, index, grid)
        modes.append(b_mode)
        if b_times.size > times.size:
            lhs = np.broadcast_to(lhs, (b_times.size, system.n))
            times = b_times
        scale = lam ** (-h)
        lhs = lhs + scale * (b_stack @ weighted)
        magnitude = max(magnitude, scale * float(b_stack.max()))

    excess = lhs - lam * xi
    row_worst = excess.max(axis=1)
    worst = int(np.argmax(row_worst))
    tolerance = STRICT_TOL * float(np.sum(xi)) * max(1.0, magnitude * float(sector.beta.max()), lam)
    return ConditionCheck(
        holds=bool(row_worst.max() <= tolerance),
        margin=float(-row_worst[worst]),
        worst=float(times[worst]),
        condition=np.array(lhs[worst]),
        bound=lam * xi,
        evidence=evidence.combine(*modes),
        tolerance=tolerance,
    )


def check_thm4(
    system: DiscreteSystem,
    sector: SectorBounds,
    xi: Sequence[float],
    lam: float,
    k_grid: Optional[Sequence[float]] = None,
) -> ConditionCheck:
    """Check (|A(k)| + lam^(-h) |B(k)|) D_beta xi <= lam xi on the evidence set.

    The inequality is non-strict; the shared tolerance band only absorbs round-off.

    Args:
        system: Discrete system with at most one delay
        sector: K(0, beta]
        xi: Positive weights
        lam: Convergence rate in (0, 1)
        k_grid: Steps to check time-varying entries at (default 0..100 max(1, h))
    """
    if len(system.delays) > 1:
        raise SystemSpecError("check_thm4 handles a single delay; use check_thm5")
    return _check(system, sector, xi, lam, k_grid)


def check_thm5(
    system: DiscreteSystem,
    sector: SectorBounds,
    xi: Sequence[float],
    lam: float,
    k_grid: Optional[Sequence[float]] = None,
) -> ConditionCheck:
    """Multi-delay version of ``check_thm4``; bit-identical to it for one delay."""
    return _check(system, sector, xi, lam, k_grid)


def _row_coefficients(a, b_ls, sector: SectorBounds, xi: np.ndarray):
    weighted = sector.beta * xi
    c_a = a @ weighted
    c_b = [(int(h), b @ weighted) for h, b in b_ls]
    return c_a, c_b


def lambda_max_profile(
    a,
    b_ls: Sequence[Tuple[int, np.ndarray]],
    sector: SectorBounds,
    xi: Sequence[float],
) -> Union[LambdaProfile, Infeasible]:
    """Smallest certified convergence rate for a fixed xi.

    Row i solves g_i(lam) = sum_j a_ij beta_j xi_j + sum_l lam^(-h_l) sum_j b_lij beta_j xi_j
    - lam xi_i = 0. Rows without delay terms are affine and solved exactly; the others are
    bisected on [1e-9, 1 - 1e-9], keeping the upper end so that g_i(lam_i) <= 0.

    Returns:
        LambdaProfile (degenerate when every lam_i is zero, e.g. the zero system), or
        Infeasible(PreconditionViolated) when (A + sum B_l) D_beta xi << xi fails
    """
    sector.require(SectorKind.POSITIVE_UP_TO)
    a = as_const_matrix(a, "A")
    n = a.shape[0]
    xi = _xi_vector(xi, n)
    checked = []
    for h, b in b_ls:
        b = as_const_matrix(b, "B")
        if not is_nonnegative(b):
            raise SystemSpecError("delay bounds must be entrywise nonnegative")
        checked.append((h, b))
    if not is_nonnegative(a):
        raise SystemSpecError("A bound must be entrywise nonnegative")
    c_a, c_b = _row_coefficients(a, checked, sector, xi)

    def g(lam: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            value = c_a - lam * xi
            for h, coefficient in c_b:
                value = value + np.where(coefficient > 0, coefficient * lam ** (-float(h)), 0.0)
        return value

    at_one = g(np.ones(n))
    band = STRICT_TOL * float(np.sum(xi))
    if np.any(at_one > -band):
        row = int(np.argmax(at_one))
        return Infeasible(
            InfeasibilityReason.PRECONDITION_VIOLATED,
            f"(A + sum B_l) D_beta xi << xi fails in row {row + 1} (defect {at_one[row]:.6g})",
            value=float(at_one[row]),
        )

    has_delay = np.zeros(n, dtype=bool)
    for _, coefficient in c_b:
        has_delay |= coefficient > 0
    lambdas = np.where(has_delay, 0.0, c_a / xi)

    lo = np.full(n, LAMBDA_FLOOR)
    hi = np.full(n, 1.0 - LAMBDA_FLOOR)
    # roots outside the clamp are reported at the clamp
    below = has_delay & (g(lo) <= 0)
    above = has_delay & (g(hi) > 0)
    for _ in range(_BISECTION_CAP):
        mid = 0.5 * (lo + hi)
        active = has_delay & ~below & ~above & (hi - lo > ROOT_TOL) & (mid > lo) & (mid < hi)
        if not np.any(active):
            break
        positive = g(mid) > 0
        lo = np.where(active & positive, mid, lo)
        hi = np.where(active & ~positive, mid, hi)
    lambdas = np.where(has_delay, hi, lambdas)
    lambdas = np.where(below, LAMBDA_FLOOR, lambdas)

    lambda_max = float(lambdas.max())
    binding = int(np.flatnonzero(lambdas >= lambda_max - ROOT_TOL)[0])
    degenerate = lambda_max <= 0
    if degenerate:
        console.warning("every row rate is zero (degenerate system); lambda_max reported as 0")
    return LambdaProfile(lambdas=lambdas, lambda_max=max(lambda_max, 0.0), binding_index=binding, degenerate=degenerate)


def _margin(a, b_ls, sector, xi, lam) -> float:
    c_a, c_b = _row_coefficients(a, b_ls, sector, xi)
    value = c_a - lam * xi
    for h, coefficient in c_b:
        value = value + coefficient * lam ** (-float(h))
    return float(np.min(-value))


def find_certificate_cor5(
    a,
    b_ls: Sequence[Tuple[int, np.ndarray]],
    sector: SectorBounds,
    xi: Optional[Sequence[float]] = None,
    criterion: Criterion = Criterion.COR5,
    evidence_mode: EvidenceMode = EvidenceMode.USER_BOUNDS,
) -> DiscreteOutcome:
    """Certificate from constant nonnegative bounds |A(k)| <= A, |B_l(k)| <= B_l.

    The witness solves (A + sum B_l) D_beta xi << xi (searched, or checked when supplied);
    the rate is lambda_max of the resulting profile, clamped to 1e-9 for degenerate systems.
    """
    sector.require(SectorKind.POSITIVE_UP_TO)
    a = as_const_matrix(a, "A")
    b_ls = [(int(h), as_const_matrix(b, "B")) for h, b in b_ls]
    if sector.n != a.shape[0]:
        raise SystemSpecError(f"sector has dimension {sector.n}, A has {a.shape[0]}")
    total = a.copy()
    for _, b in b_ls:
        total = total + b
    m = total @ sector.d_beta
    witness = find_schur_witness(m) if xi is None else verify_schur_witness(m, xi)
    if not witness:
        return witness
    profile = lambda_max_profile(a, b_ls, sector, witness.xi)
    if not profile:
        return profile
    lam = max(profile.lambda_max, LAMBDA_FLOOR)
    return DiscreteCertificate(
        xi=witness.xi,
        lam=lam,
        criterion=criterion,
        margin=max(_margin(a, b_ls, sector, witness.xi, lam), 0.0),
        evidence=evidence_mode,
        worst_k=0,
        profile=profile,
    )


def find_certificate_thm5(
    system: DiscreteSystem,
    sector: SectorBounds,
    k_grid: Optional[Sequence[float]] = None,
    xi: Optional[Sequence[float]] = None,
) -> DiscreteOutcome:
    """Certificate for a (possibly time-varying) discrete system.

    User bounds and constant matrices give a Cor5 certificate; grid suprema give a Thm4 or
    Thm5 certificate with GridEvidence.
    """
    evidence.require_kind(system, "discrete")
    grid = evidence.evidence_grid(system, k_grid)
    evidence.check_user_bounds(system, grid)
    a_bar, a_mode = evidence.a_sup(system, grid)
    b_bars, b_mode = evidence.b_sups(system, grid)
    mode = evidence.combine(a_mode, b_mode)
    if mode == EvidenceMode.USER_BOUNDS:
        criterion = Criterion.COR5
    else:
        criterion = Criterion.THM5 if len(system.delays) > 1 else Criterion.THM4
    return find_certificate_cor5(
        a_bar,
        list(zip(system.delay_values, b_bars)),
        sector,
        xi=xi,
        criterion=criterion,
        evidence_mode=mode,
    )


class DiscreteCertifier:
    """Service that certifies discrete-time systems."""

    def __init__(self, k_grid: Optional[Sequence[float]] = None, k_max: Optional[int] = None):
        """Initialize the certifier.

        Args:
            k_grid: Explicit steps to check time-varying entries at
            k_max: Last step of the default grid (default 100 max(1, h_max))
        """
        self.k_grid = None if k_grid is None else np.asarray(k_grid, dtype=float)
        self.k_max = k_max

    def grid_for(self, system: DiscreteSystem) -> np.ndarray:
        if self.k_grid is not None:
            return self.k_grid
        return default_step_grid(system.h_max, self.k_max)

    def check(self, system: DiscreteSystem, sector: SectorBounds, xi, lam: float) -> ConditionCheck:
        return check_thm5(system, sector, xi, lam, self.grid_for(system))

    def certify(
        self,
        system: DiscreteSystem,
        sector: SectorBounds,
        xi: Optional[Sequence[float]] = None,
        lam: Optional[float] = None,
    ) -> DiscreteOutcome:
        """Check a supplied (xi, lambda), or search for the smallest certified lambda."""
        if xi is not None and lam is not None:
            check = self.check(system, sector, xi, lam)
            if not check:
                return Infeasible(
                    InfeasibilityReason.CONDITION_VIOLATED,
                    f"condition fails at k={check.worst_k} (margin {check.margin:.6g})",
                    value=check.margin,
                )
            criterion = Criterion.THM5 if len(system.delays) > 1 else Criterion.THM4
            return DiscreteCertificate(
                xi=xi,
                lam=lam,
                criterion=criterion,
                margin=check.margin,
                evidence=check.evidence,
                worst_k=check.worst_k,
            )
        return find_certificate_thm5(system, sector, self.grid_for(system), xi)

    def lambda_profile(
        self, system: DiscreteSystem, sector: SectorBounds, xi: Optional[Sequence[float]] = None
    ) -> Union[LambdaProfile, Infeasible]:
        """Per-row convergence rates for a supplied or searched xi."""
        if xi is None:
            certificate = self.certify(system, sector)
            return certificate.profile if certificate else certificate
        grid = self.grid_for(system)
        a_bar, _ = evidence.a_sup(system, grid)
        b_bars, _ = evidence.b_sups(system, grid)
        return lambda_max_profile(a_bar, list(zip(system.delay_values, b_bars)), sector, xi)


__all__ = [
    "DiscreteCertifier",
    "check_thm4",
    "check_thm5",
    "find_certificate_cor5",
    "find_certificate_thm5",
    "lambda_max_profile",
]
