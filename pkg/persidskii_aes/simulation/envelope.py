"""Empirical check of a trajectory against the exponential envelope M ||phi|| r(t)."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sklearn.linear_model import LinearRegression

from ..models.tolerances import ENVELOPE_SLACK, ENVELOPE_TAIL_FRACTION
from .trace import SimulationTrace


@dataclass(frozen=True)
class EnvelopeReport:
    """Fitted constant and tail slope of one trajectory.

    ``m_fit`` is the smallest M with |x(t)| <= M |phi| e^{-alpha t} (or lambda^k) on the
    trace. ``slope_fit`` is the least-squares slope of log |x| over the tail, None when
    the tail has fewer than two nonzero samples.
    """

    rate: float
    m_fit: float
    slope_fit: Optional[float]
    threshold: float
    passed: bool
    discrete: bool = False

    def to_dict(self) -> dict:
        return {
            "rate": self.rate,
            "m_fit": self.m_fit,
            "slope_fit": self.slope_fit,
            "threshold": self.threshold,
            "passed": self.passed,
        }


def log_decay(rate: float, discrete: bool) -> float:
    """Slope of log r(t): -alpha, or log(lambda) in discrete time."""
    return math.log(rate) if discrete else -rate


def tail_slope(times: np.ndarray, norms: np.ndarray, tail_fraction: float = ENVELOPE_TAIL_FRACTION) -> Optional[float]:
    start = (1.0 - tail_fraction) * times[-1]
    mask = (times >= start) & (norms > 0)
    if np.count_nonzero(mask) < 2:
        return None
    model = LinearRegression().fit(times[mask].reshape(-1, 1), np.log(norms[mask]))
    return float(model.coef_[0])


def check_envelope(
    trace: SimulationTrace,
    rate: float,
    norm_phi: Optional[float] = None,
    discrete: Optional[bool] = None,
    slack: float = ENVELOPE_SLACK,
    tail_fraction: float = ENVELOPE_TAIL_FRACTION,
) -> EnvelopeReport:
    """Fit M and the tail slope and compare the slope with the certified rate.

    Passes when M is finite and the tail slope does not exceed log r + ``slack``.
    """
    discrete = trace.discrete if discrete is None else discrete
    norm_phi = trace.norm_phi if norm_phi is None else norm_phi
    if norm_phi is None or not norm_phi > 0:
        raise ValueError("the initial history norm must be positive")
    decay = log_decay(rate, discrete)
    threshold = decay + slack
    norms = trace.norms
    times = np.asarray(trace.times, dtype=float)
    positive = norms > 0
    if not np.any(positive):
        return EnvelopeReport(rate, 0.0, None, threshold, True, discrete)
    # log space keeps e^{alpha t} from overflowing on long horizons
    log_ratio = np.log(norms[positive]) - math.log(norm_phi) - decay * times[positive]
    m_fit = float(np.exp(log_ratio.max())) if log_ratio.max() < 700 else math.inf
    slope = tail_slope(times, norms, tail_fraction)
    passed = math.isfinite(m_fit) and (slope is None or slope <= threshold)
    return EnvelopeReport(rate, m_fit, slope, threshold, passed, discrete)
