"""Continuous-time absolute exponential stability criteria.

All checks use the column convention: with the Metzlerized A-hat(t) and delay bounds
B-bar_l, the vector condition reads

    D_delta A-hat(t)^T xi + sum_l e^(alpha h_l) D_beta B-bar_l^T xi <= -alpha xi

and the constant comparison matrix handed to the witness search is
(A-hat D_delta + sum_l B-bar_l D_beta)^T.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import ConvergenceError, SystemSpecError
from ..models.certificate import (
    ConditionCheck,
    ContinuousCertificate,
    Criterion,
    DecayProfile,
    EvidenceMode,
    Infeasible,
    InfeasibilityReason,
    RateWindow,
)
from ..models.matrices import (
    MatrixLike,
    as_const_matrix,
    as_matrix_like,
    default_time_grid,
    is_metzler,
    is_nonnegative,
)
from ..models.sector import SectorBounds, SectorKind
from ..models.system import ContinuousSystem
from ..models.tolerances import BRACKET_DOUBLING_CAP, FEASIBILITY_TOL, ROOT_TOL, STRICT_TOL
from ..positive import find_hurwitz_witness, spectral_abscissa, verify_hurwitz_witness
from ..simulation.nonlinearity import VERIFICATION_GRID, GeneralizedNonlinearity
from . import evidence

ContinuousOutcome = Union[ContinuousCertificate, Infeasible]

_BISECTION_CAP = 2000


def _xi_vector(xi, n: int) -> np.ndarray:
    xi = np.array(xi, dtype=float).reshape(-1)
    if xi.shape != (n,):
        raise SystemSpecError(f"xi has length {xi.size}, expected {n}")
    if not np.all(np.isfinite(xi)) or np.any(xi <= 0):
        raise SystemSpecError("xi must be a strictly positive vector")
    return xi


def _band(xi: np.ndarray, magnitude: float) -> float:
    return STRICT_TOL * float(np.sum(xi)) * max(1.0, magnitude)


def _condition_parts(system: ContinuousSystem, sector: SectorBounds, t_grid):
    sector.require(SectorKind.BOUNDED)
    if sector.n != system.n:
        raise SystemSpecError(f"sector has dimension {sector.n}, system has {system.n}")
    grid = evidence.evidence_grid(system, t_grid)
    evidence.check_user_bounds(system, grid)
    times, a_stack, a_mode = evidence.a_view_on_grid(system, grid)
    b_bars, b_mode = evidence.b_sups(system, grid)
    return times, a_stack, b_bars, evidence.combine(a_mode, b_mode)


def condition_vectors(
    system: ContinuousSystem,
    sector: SectorBounds,
    xi: Sequence[float],
    alpha: float,
    times: Sequence[float],
) -> np.ndarray:
    """Left side D_delta A-hat(t)^T xi + sum_l e^(alpha h_l) D_beta B-bar_l^T xi at each time.

    B-bar_l is taken on the same times when no bound is available.

    Returns:
        Array of shape (len(times), n)
    """
    times = np.asarray(times, dtype=float).reshape(-1)
    xi = _xi_vector(xi, system.n)
    sector.require(SectorKind.BOUNDED)
    a_stack = system.a_view(np.stack([system.a_at(t) for t in times]))
    if system.bounds is not None and system.bounds.a is not None:
        a_stack = np.broadcast_to(system.bounds.a, a_stack.shape)
    b_bars, _ = evidence.b_sups(system, times)
    return _left_side(a_stack, b_bars, system.delay_values, sector, xi, alpha)


def _left_side(a_stack, b_bars, hs, sector, xi, alpha) -> np.ndarray:
    lhs = sector.delta * np.einsum("tji,j->ti", a_stack, xi)
    for h, b_bar in zip(hs, b_bars):
        lhs = lhs + np.exp(alpha * h) * sector.beta * (b_bar.T @ xi)
    return lhs


def _check(system, sector, xi, alpha, t_grid) -> ConditionCheck:
    if not alpha > 0:
        raise SystemSpecError(f"alpha must be positive, got {alpha}")
    xi = _xi_vector(xi, system.n)
    times, a_stack, b_bars, mode = _condition_parts(system, sector, t_grid)
    lhs = _left_side(a_stack, b_bars, system.delay_values, sector, xi, alpha)
    excess = lhs + alpha * xi
    row_worst = excess.max(axis=1)
    worst = int(np.argmax(row_worst))
    delay_scale = [
        float(np.exp(alpha * h) * sector.beta.max() * b.max())
        for h, b in zip(system.delay_values, b_bars)
    ]
    magnitude = max([float(np.abs(a_stack).max() * sector.delta.max()), alpha] + delay_scale)
    tolerance = _band(xi, magnitude)
    return ConditionCheck(
        holds=bool(row_worst.max() <= tolerance),
        margin=float(-row_worst[worst]),
        worst=float(times[worst]),
        condition=lhs[worst],
        bound=-alpha * xi,
        evidence=mode,
        tolerance=tolerance,
    )


def check_thm1(
    system: ContinuousSystem,
    sector: SectorBounds,
    xi: Sequence[float],
    alpha: float,
    t_grid: Optional[Sequence[float]] = None,
) -> ConditionCheck:
    """Check the single-delay condition for a given xi and alpha.

    Args:
        system: System with at most one delay
        sector: K[delta, beta]
        xi: Positive weight vector
        alpha: Decay rate to certify
        t_grid: Evidence grid for time-varying entries without bounds

    Returns:
        ConditionCheck with margin = -max over rows and times of (lhs + alpha xi) and the
        first worst time
    """
    evidence.require_kind(system, "continuous")
    if len(system.delays) > 1:
        raise SystemSpecError("check_thm1 handles a single delay; use check_thm3")
    return _check(system, sector, xi, alpha, t_grid)


def check_thm3(
    system: ContinuousSystem,
    sector: SectorBounds,
    xi: Sequence[float],
    alpha: float,
    t_grid: Optional[Sequence[float]] = None,
) -> ConditionCheck:
    """Multi-delay version of ``check_thm1``; identical to it for one delay."""
    evidence.require_kind(system, "continuous")
    return _check(system, sector, xi, alpha, t_grid)


def alpha_max_profile(
    a_hat: np.ndarray,
    b_bars: Sequence[Tuple[float, np.ndarray]],
    sector: SectorBounds,
    xi: Sequence[float],
) -> Union[DecayProfile, Infeasible]:
    """Largest decay rate certified by a fixed xi.

    Row i solves g_i(alpha) = delta_i (A-hat^T xi)_i + sum_l e^(alpha h_l) beta_i (B-bar_l^T xi)_i
    + alpha xi_i = 0 by bisection. The bracket doubles from 1 until g_i turns positive.
    Each root is the lower end of its final bracket, so g_i(alpha_i) <= 0.

    Returns:
        DecayProfile, or Infeasible(PreconditionViolated) when some g_i(0) >= 0
    """
    a_hat = as_const_matrix(a_hat, "A-hat")
    n = a_hat.shape[0]
    xi = _xi_vector(xi, n)
    if sector.delta is None:
        raise SystemSpecError("decay profile needs lower slopes delta")
    base = sector.delta * (a_hat.T @ xi)
    delay_terms = []
    for h, b_bar in b_bars:
        if sector.beta is None:
            raise SystemSpecError("delayed terms need upper slopes beta")
        b_bar = as_const_matrix(b_bar, "B-bar")
        delay_terms.append((float(h), sector.beta * (b_bar.T @ xi)))

    def g(alpha: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore"):
            value = base + alpha * xi
            for h, coefficient in delay_terms:
                value = value + np.where(coefficient > 0, np.exp(alpha * h) * coefficient, 0.0)
        return value

    at_zero = g(np.zeros(n))
    if np.any(at_zero >= 0):
        row = int(np.argmax(at_zero))
        return Infeasible(
            InfeasibilityReason.PRECONDITION_VIOLATED,
            f"g_{row + 1}(0) = {at_zero[row]:.6g} is not negative for this xi",
            value=float(at_zero[row]),
        )

    lo = np.zeros(n)
    hi = np.ones(n)
    for _ in range(BRACKET_DOUBLING_CAP):
        low_side = g(hi) <= 0
        if not np.any(low_side):
            break
        lo = np.where(low_side, hi, lo)
        hi = np.where(low_side, 2.0 * hi, hi)
    else:
        raise ConvergenceError("decay-rate bracket kept growing")
    for _ in range(_BISECTION_CAP):
        mid = 0.5 * (lo + hi)
        active = (hi - lo > ROOT_TOL) & (mid > lo) & (mid < hi)
        if not np.any(active):
            break
        positive = g(mid) > 0
        hi = np.where(active & positive, mid, hi)
        lo = np.where(active & ~positive, mid, lo)
    alphas = lo
    alpha_max = float(alphas.min())
    binding = int(np.flatnonzero(alphas <= alpha_max + ROOT_TOL)[0])
    return DecayProfile(alphas=alphas, alpha_max=alpha_max, binding_index=binding)


def comparison_matrix(a_hat: np.ndarray, b_bars: Sequence[np.ndarray], sector: SectorBounds) -> np.ndarray:
    """(A-hat D_delta + sum_l B-bar_l D_beta)^T."""
    m = a_hat @ sector.d_delta
    for b_bar in b_bars:
        m = m + b_bar @ sector.d_beta
    return m.T


def necessity_violated(a_hat: np.ndarray, b_sum: Optional[np.ndarray] = None) -> bool:
    """True when A-hat + sum B-bar_l is not Hurwitz, which rules out every certificate."""
    m = as_const_matrix(a_hat, "A")
    if b_sum is not None:
        m = m + as_const_matrix(b_sum, "B")
    return spectral_abscissa(m) >= -FEASIBILITY_TOL


def check_necessity(a, b, xi: Sequence[float]) -> bool:
    """(A + B)^T xi << 0 under the shared strictness band.

    Args:
        a: Metzler matrix
        b: Nonnegative matrix, a list of them (summed), or None
        xi: Positive vector
    """
    a = as_const_matrix(a, "A")
    total = a.copy()
    for matrix in _matrix_list(b):
        total = total + as_const_matrix(matrix, "B")
    if not is_metzler(a):
        raise SystemSpecError("A must be Metzler")
    xi = _xi_vector(xi, a.shape[0])
    values = total.T @ xi
    band = _band(xi, float(np.linalg.norm(total, np.inf)))
    return bool(np.all(values < 0) and np.all(values <= -band))


def _matrix_list(b) -> List[np.ndarray]:
    if b is None:
        return []
    if isinstance(b, (list, tuple)) and b and np.ndim(b[0]) == 2:
        return list(b)
    return [b]


def _certify_constant(
    a_hat: np.ndarray,
    delays: Sequence[Tuple[float, np.ndarray]],
    sector: SectorBounds,
    xi: Optional[Sequence[float]],
):
    """Necessity filter, witness search and decay profile on constant bounds.

    Returns:
        (xi, profile) on success, Infeasible otherwise
    """
    b_bars = [b for _, b in delays]
    b_sum = sum(b_bars) if b_bars else None
    if necessity_violated(a_hat, b_sum):
        m = a_hat if b_sum is None else a_hat + b_sum
        mu = spectral_abscissa(m)
        return Infeasible(
            InfeasibilityReason.NECESSITY_VIOLATED,
            f"A + sum B_l is not Hurwitz (spectral abscissa {mu:.6g}); no certificate can exist",
            value=mu,
        )
    m = comparison_matrix(a_hat, b_bars, sector)
    witness = find_hurwitz_witness(m) if xi is None else verify_hurwitz_witness(m, xi)
    if not witness:
        return witness
    profile = alpha_max_profile(a_hat, delays, sector, witness.xi)
    if not profile:
        return profile
    if not profile.alpha_max > 0:
        return Infeasible(
            InfeasibilityReason.MARGIN_TOO_SMALL, "decay rate rounds to zero", value=profile.alpha_max
        )
    return witness.xi, profile


def _find_certificate(system, sector, t_grid, xi, multi_delay: bool) -> ContinuousOutcome:
    evidence.require_kind(system, "continuous")
    sector.require(SectorKind.BOUNDED)
    grid = evidence.evidence_grid(system, t_grid)
    evidence.check_user_bounds(system, grid)
    a_hat, a_mode = evidence.a_sup(system, grid)
    b_bars, b_mode = evidence.b_sups(system, grid)
    mode = evidence.combine(a_mode, b_mode)
    result = _certify_constant(a_hat, list(zip(system.delay_values, b_bars)), sector, xi)
    if isinstance(result, Infeasible):
        return result
    certified_xi, profile = result
    check = _check(system, sector, certified_xi, profile.alpha_max, grid)
    if multi_delay:
        criterion = Criterion.THM3
    else:
        criterion = Criterion.THM1 if mode == EvidenceMode.GRID_EVIDENCE else Criterion.COR3
    return ContinuousCertificate(
        xi=certified_xi,
        alpha=profile.alpha_max,
        criterion=criterion,
        margin=max(check.margin, 0.0),
        evidence=mode,
        worst_t=check.worst,
        profile=profile,
    )


def find_certificate_thm1(
    system: ContinuousSystem,
    sector: SectorBounds,
    t_grid: Optional[Sequence[float]] = None,
    xi: Optional[Sequence[float]] = None,
) -> ContinuousOutcome:
    """Find xi and the largest certified decay rate for a system with at most one delay.

    Constant bounds come from user bounds, the matrices themselves when constant, or grid
    suprema (GridEvidence, announced with a warning). Certificates on exact or user bounds
    are labelled Cor3, grid-based ones Thm1.
    """
    if len(system.delays) > 1:
        raise SystemSpecError("find_certificate_thm1 handles a single delay; use find_certificate_thm3")
    return _find_certificate(system, sector, t_grid, xi, multi_delay=False)


def find_certificate_thm3(
    system: ContinuousSystem,
    sector: SectorBounds,
    t_grid: Optional[Sequence[float]] = None,
    xi: Optional[Sequence[float]] = None,
) -> ContinuousOutcome:
    """Multi-delay certificate search; single-delay systems get the ``find_certificate_thm1`` label."""
    multi = len(system.delays) > 1
    return _find_certificate(system, sector, t_grid, xi, multi_delay=multi)


def check_cor4(
    a,
    b,
    sector: SectorBounds,
    h: float = 1.0,
    xi: Optional[Sequence[float]] = None,
) -> ContinuousOutcome:
    """Certificate for the positive time-invariant system dx/dt = A f(x) + B f(x(t - h)).

    Args:
        a: Metzler matrix
        b: Nonnegative matrix, or None for the nondelay system
        sector: K[delta, beta]
        h: Delay, used only for the decay rate
        xi: Optional supplied witness instead of the Perron search
    """
    sector.require(SectorKind.BOUNDED)
    a = as_const_matrix(a, "A")
    if not is_metzler(a):
        raise SystemSpecError("A must be Metzler")
    delays = []
    if b is not None:
        b = as_const_matrix(b, "B")
        if b.shape != a.shape:
            raise SystemSpecError(f"B has shape {b.shape}, A has {a.shape}")
        if not is_nonnegative(b):
            raise SystemSpecError("B must be entrywise nonnegative")
        if not h > 0:
            raise SystemSpecError("delay h must be positive")
        delays.append((float(h), b))
    if sector.n != a.shape[0]:
        raise SystemSpecError(f"sector has dimension {sector.n}, A has {a.shape[0]}")
    result = _certify_constant(a, delays, sector, xi)
    if isinstance(result, Infeasible):
        return result
    certified_xi, profile = result
    g_values = _profile_values(a, delays, sector, certified_xi, profile.alpha_max)
    return ContinuousCertificate(
        xi=certified_xi,
        alpha=profile.alpha_max,
        criterion=Criterion.COR4,
        margin=max(float(np.min(-g_values)), 0.0),
        evidence=EvidenceMode.USER_BOUNDS,
        profile=profile,
    )


def _profile_values(a_hat, delays, sector, xi, alpha) -> np.ndarray:
    value = sector.delta * (a_hat.T @ xi) + alpha * xi
    for h, b_bar in delays:
        value = value + np.exp(alpha * h) * sector.beta * (b_bar.T @ xi)
    return value


def _cor2_a_stack(a, sector: SectorBounds, t_grid):
    if isinstance(a, ContinuousSystem):
        if a.delays:
            raise SystemSpecError("the rate window applies to nondelay systems only")
        grid = evidence.evidence_grid(a, t_grid)
        evidence.check_user_bounds(a, grid)
        _, stack, mode = evidence.a_view_on_grid(a, grid)
        return stack, mode
    system = ContinuousSystem(a=as_matrix_like(a, "A"))
    grid = evidence.evidence_grid(system, t_grid)
    _, stack, mode = evidence.a_view_on_grid(system, grid)
    return stack, mode


def check_cor2(
    a: Union[MatrixLike, ContinuousSystem],
    sector: SectorBounds,
    xi: Sequence[float],
    t_grid: Optional[Sequence[float]] = None,
    alpha: Optional[float] = None,
) -> Union[RateWindow, Infeasible]:
    """Rate window (0, -gamma delta_0 / d_2) for a nondelay system.

    gamma is the largest weighted column sum sum_i a-hat_ij(t) xi_i over j and the evidence
    set. Only the lower slopes delta enter, so K[delta, beta] and K[delta, inf) both work.

    Args:
        a: A(t) as a matrix, or a nondelay ContinuousSystem (its bound on A is used)
        sector: Sector with lower slopes delta
        xi: Positive weights
        t_grid: Evidence grid for time-varying entries
        alpha: Exported rate; defaults to 0.9 alpha_sup
    """
    sector.require(SectorKind.BOUNDED, SectorKind.BOUNDED_BELOW)
    stack, mode = _cor2_a_stack(a, sector, t_grid)
    n = stack.shape[-1]
    if sector.n != n:
        raise SystemSpecError(f"sector has dimension {sector.n}, A has {n}")
    xi = _xi_vector(xi, n)
    column_sums = np.einsum("tij,i->tj", stack, xi)
    gamma = float(column_sums.max())
    band = _band(xi, float(np.abs(stack).max()))
    if not (gamma < 0 and gamma <= -band):
        return Infeasible(
            InfeasibilityReason.CONDITION_VIOLATED,
            f"gamma = {gamma:.6g} is not negative",
            value=gamma,
        )
    delta0 = float(sector.delta.min())
    d2 = float(xi.max())
    alpha_sup = -gamma * delta0 / d2
    return RateWindow(
        gamma=gamma,
        delta0=delta0,
        d2=d2,
        alpha_sup=alpha_sup,
        xi=xi,
        evidence=mode,
        alpha=0.0 if alpha is None else float(alpha),
    )


def find_rate_window_cor2(
    a: Union[MatrixLike, ContinuousSystem],
    sector: SectorBounds,
    t_grid: Optional[Sequence[float]] = None,
    alpha: Optional[float] = None,
) -> Union[RateWindow, Infeasible]:
    """Rate window with xi taken from the Hurwitz witness of A-hat_sup^T."""
    stack, _ = _cor2_a_stack(a, sector, t_grid)
    witness = find_hurwitz_witness(stack.max(axis=0).T)
    if not witness:
        return witness
    return check_cor2(a, sector, witness.xi, t_grid=t_grid, alpha=alpha)


def certificate_from_window(window: RateWindow) -> ContinuousCertificate:
    return ContinuousCertificate(
        xi=window.xi,
        alpha=window.alpha,
        criterion=Criterion.COR2,
        margin=-window.gamma,
        evidence=window.evidence,
        window=window,
    )


@dataclass(frozen=True)
class DominanceCheck:
    """Result of the diagonal-dominance sandwich |f_ij| <= |f_j| <= |f_jj|."""

    holds: bool
    row: Optional[int] = None
    column: Optional[int] = None
    x: Optional[float] = None
    t: Optional[float] = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "dominance holds on the sample grid"
        return f"dominance fails for f_{self.row + 1}{self.column + 1} at x={self.x:g}, t={self.t:g}"


def check_thm2_applicability(
    family: GeneralizedNonlinearity,
    x_grid: Optional[Sequence[float]] = None,
    t_grid: Optional[Sequence[float]] = None,
    rtol: float = 1e-12,
) -> DominanceCheck:
    """Sample the dominance sandwich on a grid of (x, t).

    Returns:
        DominanceCheck, falsy with the first violating (i, j, x, t)
    """
    x_grid = VERIFICATION_GRID if x_grid is None else np.asarray(x_grid, dtype=float).reshape(-1)
    t_grid = np.asarray([0.0] if t_grid is None else t_grid, dtype=float).reshape(-1)
    n = family.n
    off_diagonal = ~np.eye(n, dtype=bool)
    for t in t_grid:
        components = np.abs(family.components(x_grid, t))
        base = np.abs(family.base.evaluate(np.repeat(x_grid[:, None], n, axis=1)))
        # off-diagonal: |f_ij| <= |f_j|
        violated = (components > base[:, None, :] * (1 + rtol)) & off_diagonal
        # diagonal: |f_j| <= |f_jj|
        diagonal = np.diagonal(components, axis1=1, axis2=2)
        violated_diagonal = base > diagonal * (1 + rtol)
        if np.any(violated):
            where, i, j = np.argwhere(violated)[0]
            return DominanceCheck(False, int(i), int(j), float(x_grid[where]), float(t))
        if np.any(violated_diagonal):
            where, j = np.argwhere(violated_diagonal)[0]
            return DominanceCheck(False, int(j), int(j), float(x_grid[where]), float(t))
    return DominanceCheck(True)


def check_thm2(
    system: ContinuousSystem,
    sector: SectorBounds,
    xi: Sequence[float],
    alpha: float,
    family: GeneralizedNonlinearity,
    t_grid: Optional[Sequence[float]] = None,
) -> Union[ConditionCheck, Infeasible]:
    """Criterion for cross-coupled nonlinearities: dominance, then the single-delay condition."""
    evidence.require_kind(system, "continuous")
    grid = evidence.evidence_grid(system, t_grid)
    dominance = check_thm2_applicability(family, t_grid=grid)
    if not dominance:
        return Infeasible(InfeasibilityReason.PRECONDITION_VIOLATED, dominance.describe())
    return check_thm3(system, sector, xi, alpha, grid)


def find_certificate_thm2(
    system: ContinuousSystem,
    sector: SectorBounds,
    family: GeneralizedNonlinearity,
    t_grid: Optional[Sequence[float]] = None,
) -> ContinuousOutcome:
    """Certificate search for cross-coupled nonlinearities, labelled Thm2."""
    evidence.require_kind(system, "continuous")
    grid = evidence.evidence_grid(system, t_grid)
    dominance = check_thm2_applicability(family, t_grid=grid)
    if not dominance:
        return Infeasible(InfeasibilityReason.PRECONDITION_VIOLATED, dominance.describe())
    certificate = find_certificate_thm3(system, sector, grid)
    if not certificate:
        return certificate
    return ContinuousCertificate(
        xi=certificate.xi,
        alpha=certificate.alpha,
        criterion=Criterion.THM2,
        margin=certificate.margin,
        evidence=certificate.evidence,
        worst_t=certificate.worst_t,
        profile=certificate.profile,
    )


class ContinuousCertifier:
    """Service that picks and runs the strongest applicable continuous-time criterion."""

    def __init__(
        self,
        t_grid: Optional[Sequence[float]] = None,
        grid_t_max: Optional[float] = None,
        grid_step: Optional[float] = None,
    ):
        """Initialize the certifier.

        Args:
            t_grid: Explicit evidence grid; overrides the other two options
            grid_t_max: End of the default grid (default 10 h_max)
            grid_step: Step of the default grid (default h_max / 100)
        """
        self.t_grid = None if t_grid is None else np.asarray(t_grid, dtype=float)
        self.grid_t_max = grid_t_max
        self.grid_step = grid_step

    def grid_for(self, system: ContinuousSystem) -> np.ndarray:
        if self.t_grid is not None:
            return self.t_grid
        return default_time_grid(system.h_max, self.grid_t_max, self.grid_step)

    def check(self, system: ContinuousSystem, sector: SectorBounds, xi, alpha: float) -> ConditionCheck:
        return check_thm3(system, sector, xi, alpha, self.grid_for(system))

    def certify(
        self,
        system: ContinuousSystem,
        sector: SectorBounds,
        xi: Optional[Sequence[float]] = None,
        alpha: Optional[float] = None,
    ) -> ContinuousOutcome:
        """Certify with the strongest available guarantee.

        With both xi and alpha the condition is checked as given. Otherwise: K[delta, inf)
        nondelay systems get the rate window; constant positive systems with at most one delay
        go through the positive-system corollary; everything else through the bound-based
        search (user bounds first, grid evidence last).
        """
        grid = self.grid_for(system)
        if sector.kind == SectorKind.BOUNDED_BELOW:
            window = (
                check_cor2(system, sector, xi, grid, alpha)
                if xi is not None
                else find_rate_window_cor2(system, sector, grid, alpha)
            )
            return certificate_from_window(window) if window else window
        if xi is not None and alpha is not None:
            check = self.check(system, sector, xi, alpha)
            if not check:
                return Infeasible(
                    InfeasibilityReason.CONDITION_VIOLATED,
                    f"condition fails at t={check.worst:g} (margin {check.margin:.6g})",
                    value=check.margin,
                )
            criterion = Criterion.THM3 if len(system.delays) > 1 else Criterion.THM1
            return ContinuousCertificate(
                xi=xi,
                alpha=alpha,
                criterion=criterion,
                margin=check.margin,
                evidence=check.evidence,
                worst_t=check.worst,
            )
        if system.is_positive and len(system.delays) <= 1:
            b = system.delays[0].b if system.delays else None
            h = system.delays[0].h if system.delays else 1.0
            return check_cor4(system.a, b, sector, h=h, xi=xi)
        return find_certificate_thm3(system, sector, grid, xi)

    def decay_profile(
        self, system: ContinuousSystem, sector: SectorBounds, xi: Optional[Sequence[float]] = None
    ) -> Union[DecayProfile, Infeasible]:
        """Per-row decay rates for a supplied or searched xi."""
        grid = self.grid_for(system)
        a_hat, _ = evidence.a_sup(system, grid)
        b_bars, _ = evidence.b_sups(system, grid)
        if xi is None:
            result = _certify_constant(a_hat, list(zip(system.delay_values, b_bars)), sector, None)
            return result if isinstance(result, Infeasible) else result[1]
        return alpha_max_profile(a_hat, list(zip(system.delay_values, b_bars)), sector, xi)


__all__ = [
    "ContinuousCertifier",
    "DominanceCheck",
    "alpha_max_profile",
    "certificate_from_window",
    "check_cor2",
    "check_cor4",
    "check_necessity",
    "check_thm1",
    "check_thm2",
    "check_thm2_applicability",
    "check_thm3",
    "comparison_matrix",
    "condition_vectors",
    "find_certificate_thm1",
    "find_certificate_thm2",
    "find_certificate_thm3",
    "find_rate_window_cor2",
    "necessity_violated",
]
