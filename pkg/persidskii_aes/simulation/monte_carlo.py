"""Monte-Carlo falsification of a certificate.

Samples admissible nonlinearities and initial histories, simulates each pair and checks
the trajectory against the certified exponential envelope. Passing runs are evidence,
not proof: the envelope is only ever observed on a finite horizon.
"""

import math
from dataclasses import dataclass, field
from functools import partial
from typing import List, Optional, Tuple, Union

import numpy as np

from ..errors import IntegrationError, SystemSpecError
from ..models.certificate import ContinuousCertificate, DiscreteCertificate
from ..models.sector import SectorBounds, SectorKind
from ..models.system import ContinuousSystem, DiscreteSystem
from ..models.tolerances import ENVELOPE_SLACK
from ..utils import console
from .envelope import check_envelope
from .history import sample_history
from .integrate import DEFAULT_STEP, integrate_dde_batch
from .iterate import iterate_discrete_batch
from .nonlinearity import sample_nonlinearity

FALSIFICATION_BANNER = (
    "Simulation is a falsification harness: passing runs support the certificate "
    "but cannot prove the bound for all t or for every admissible f."
)

# history seeds live in their own range so they never collide with nonlinearity seeds
HISTORY_SEED_OFFSET = 10_000


@dataclass(frozen=True)
class RunSummary:
    index: int
    nonlinearity: str
    history: str
    m_fit: float
    slope_fit: Optional[float]
    passed: bool
    error: Optional[str] = None

    def to_dict(self) -> dict:
        payload = {
            "run": self.index,
            "nonlinearity": self.nonlinearity,
            "history": self.history,
            "m_fit": self.m_fit,
            "slope_fit": self.slope_fit,
            "passed": self.passed,
        }
        if self.error:
            payload["error"] = self.error
        return payload


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    runs: int
    failures: int
    worst_m_fit: float
    worst_slope: Optional[float]
    rate: float
    discrete: bool
    summaries: List[RunSummary] = field(default_factory=list)
    banner: str = FALSIFICATION_BANNER

    def to_dict(self) -> dict:
        return {
            "status": "passed" if self.passed else "failed",
            "rate": self.rate,
            "time": "discrete" if self.discrete else "continuous",
            "runs": self.runs,
            "failures": self.failures,
            "worst_m_fit": self.worst_m_fit,
            "worst_slope": self.worst_slope,
            "note": self.banner,
            "results": [summary.to_dict() for summary in self.summaries],
        }


def _check_runs(
    system: Union[ContinuousSystem, DiscreteSystem],
    pairs: List[Tuple],
    base_index: int,
    discrete: bool,
    rate: float,
    horizon: Optional[float],
    step: float,
    slack: float,
) -> List[RunSummary]:
    """Simulate all (nonlinearity, history) pairs in one batch and fit each envelope."""
    fs = [f for f, _ in pairs]
    phis = [phi for _, phi in pairs]
    if discrete:
        traces = iterate_discrete_batch(system, fs, phis, horizon=None if horizon is None else int(round(horizon)))
    else:
        traces = integrate_dde_batch(system, fs, phis, horizon=horizon, step=step)
    summaries = []
    for offset, (f, phi, trace) in enumerate(zip(fs, phis, traces)):
        report = check_envelope(trace, rate, discrete=discrete, slack=slack)
        summaries.append(
            RunSummary(
                base_index + offset, f.describe(), phi.describe(), report.m_fit, report.slope_fit, report.passed
            )
        )
    return summaries


def monte_carlo_validate(
    system: Union[ContinuousSystem, DiscreteSystem],
    sector: SectorBounds,
    certificate: Union[ContinuousCertificate, DiscreteCertificate],
    n_nonlinearities: int = 20,
    n_histories: int = 10,
    seed: int = 0,
    horizon: Optional[float] = None,
    step: float = DEFAULT_STEP,
    slack: float = ENVELOPE_SLACK,
) -> ValidationReport:
    """Simulate every (nonlinearity, history) pair and test it against the certified rate.

    Args:
        system: System the certificate was issued for
        sector: Sector the nonlinearities are drawn from
        certificate: ContinuousCertificate (alpha) or DiscreteCertificate (lambda)
        n_nonlinearities: Number of sampled nonlinearities
        n_histories: Number of initial histories per nonlinearity
        seed: Base seed; every run is reproducible from it
        horizon: Simulation horizon (solver default when None)
        step: RK4 step in continuous time
        slack: Allowed excess of the fitted tail slope over log r

    Returns:
        ValidationReport; ``passed`` is True iff every run passed
    """
    discrete = isinstance(system, DiscreteSystem)
    if discrete != isinstance(certificate, DiscreteCertificate):
        raise SystemSpecError("certificate time domain does not match the system")
    if discrete:
        sector.require(SectorKind.POSITIVE_UP_TO)
    if n_nonlinearities < 1 or n_histories < 1:
        raise SystemSpecError("need at least one nonlinearity and one history")
    if sector.n != system.n:
        raise SystemSpecError(f"sector has dimension {sector.n}, system has {system.n}")

    rate = certificate.rate
    console.status(
        f"Validating rate {rate:.6g} with {n_nonlinearities} x {n_histories} runs (seed {seed})"
    )
    console.detail(FALSIFICATION_BANNER)

    nonlinearities = [sample_nonlinearity(sector, seed=seed + r) for r in range(n_nonlinearities)]
    histories = [
        sample_history(system.n, system.h_max, seed=seed + HISTORY_SEED_OFFSET + s)
        for s in range(n_histories)
    ]
    pairs = [(f, phi) for f in nonlinearities for phi in histories]
    run = partial(_check_runs, system, discrete=discrete, rate=rate, horizon=horizon, step=step, slack=slack)
    try:
        summaries = run(pairs, 0)
    except IntegrationError:
        # a blow-up aborts the shared sweep; rerun per nonlinearity to charge it to its own runs
        summaries = []
        for r, f in enumerate(nonlinearities):
            base_index = r * n_histories
            try:
                summaries.extend(run(pairs[base_index:base_index + n_histories], base_index))
            except IntegrationError as exc:
                summaries.extend(
                    RunSummary(base_index + s, f.describe(), phi.describe(), math.inf, None, False, str(exc))
                    for s, phi in enumerate(histories)
                )

    failures = sum(not summary.passed for summary in summaries)
    slopes = [summary.slope_fit for summary in summaries if summary.slope_fit is not None]
    report = ValidationReport(
        passed=failures == 0,
        runs=len(summaries),
        failures=failures,
        worst_m_fit=float(max(summary.m_fit for summary in summaries)),
        worst_slope=float(np.max(slopes)) if slopes else None,
        rate=rate,
        discrete=discrete,
        summaries=summaries,
    )
    if report.passed:
        console.success(f"All {report.runs} runs stayed inside the envelope (worst M = {report.worst_m_fit:.4g})")
    else:
        console.failure(f"{failures} of {report.runs} runs left the envelope")
    return report
