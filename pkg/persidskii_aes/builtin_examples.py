"""The two worked examples and their golden values.

Example 1 is a continuous-time system with one unit delay and an unbounded A(t); Example 2 is
a discrete-time system with one unit delay whose entries are bounded by constant matrices.
"""

import math
from dataclasses import dataclass
from typing import List

import numpy as np

from .criteria import check_thm1, condition_vectors, find_certificate_cor5
from .models import Infeasible
from .utils.loader import system_from_dict

EXAMPLE1 = {
    "kind": "continuous",
    "n": 2,
    "A": [["-4*t-12", 0], ["t", "-2*t-5"]],
    "delays": [
        {
            "h": 1,
            "B": [
                ["(1/3)*sin(t)", "(1/8)*cos(t)"],
                ["(1/3)*exp(-t)*cos(t)", "(1/8)*exp(-t)*sin(t)"],
            ],
        }
    ],
    "sector": {"delta": [1 / 3, 1 / 2], "beta": [3 / 2, 2]},
    "bounds": {"B": [[[1 / 3, 1 / 8], [1 / 3, 1 / 8]]]},
}

EXAMPLE2 = {
    "kind": "discrete",
    "n": 2,
    "A": [["-sin(t)", "2*exp(-3*t)"], ["3*cos(t)", "-sin(t)"]],
    "delays": [
        {
            "h": 1,
            "B": [["(1/2)*exp(-t)", "(1/3)*sin(t)"], ["(1/2)*exp(-2*t)", "(1/4)*cos(t)"]],
        }
    ],
    "sector": {"beta": [1 / 8, 1 / 14]},
    "bounds": {"A": [[1, 2], [3, 1]], "B": [[[1 / 2, 1 / 3], [1 / 2, 1 / 4]]]},
}

EXAMPLE1_XI = (1.0, 1.0)
EXAMPLE1_ALPHA = 1.0
EXAMPLE1_GRID = np.linspace(0.0, 100.0, 10_001)

EXAMPLE2_XI = (1.0, 1.0)
EXAMPLE2_LAMBDA_MAX = 0.5840213813


def continuous_example():
    """Example 1 as (system, sector)."""
    return system_from_dict(EXAMPLE1)


def discrete_example():
    """Example 2 as (system, sector)."""
    return system_from_dict(EXAMPLE2)


def _positive_root(b: float, c: float) -> float:
    """Positive root of lambda^2 - b lambda - c."""
    return (b + math.sqrt(b * b + 4 * c)) / 2


@dataclass(frozen=True)
class ExampleCheck:
    example: str
    quantity: str
    value: float
    expected: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.value) and abs(self.value - self.expected) < self.tolerance

    def describe(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.quantity} = {self.value:.10f} (|Δ| < {self.tolerance:g}): {verdict}"

    def to_dict(self) -> dict:
        return {
            "example": self.example,
            "quantity": self.quantity,
            "value": self.value,
            "expected": self.expected,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def example1_checks() -> List[ExampleCheck]:
    system, sector = continuous_example()
    check = check_thm1(system, sector, EXAMPLE1_XI, EXAMPLE1_ALPHA, EXAMPLE1_GRID)
    checks = [
        ExampleCheck("1", "holds", float(check.holds), 1.0, 0.5),
        ExampleCheck("1", "margin", check.margin, 1.5 - math.e / 2, 1e-12),
        ExampleCheck("1", "worst_t", check.worst_t, 0.0, 1e-12),
    ]
    times = (0.0, 1.0, 5.0)
    lhs = condition_vectors(system, sector, EXAMPLE1_XI, EXAMPLE1_ALPHA, times)
    for t, row in zip(times, lhs):
        expected = (-t - 4 + math.e, -t - 2.5 + math.e / 2)
        for i in range(2):
            checks.append(ExampleCheck("1", f"condition_{i + 1}(t={t:g})", float(row[i]), expected[i], 1e-12))
    return checks


def example2_checks() -> List[ExampleCheck]:
    system, sector = discrete_example()
    bounds = system.bounds
    result = find_certificate_cor5(
        bounds.a, [(system.delays[0].h, bounds.b[0])], sector, xi=EXAMPLE2_XI
    )
    if isinstance(result, Infeasible):
        return [ExampleCheck("2", "lambda_max", math.nan, EXAMPLE2_LAMBDA_MAX, 1e-8)]
    profile = result.profile
    return [
        ExampleCheck("2", "lambda_max", profile.lambda_max, EXAMPLE2_LAMBDA_MAX, 1e-8),
        ExampleCheck("2", "lambda_1", float(profile.lambdas[0]), _positive_root(15 / 56, 29 / 336), 1e-8),
        ExampleCheck("2", "lambda_2", float(profile.lambdas[1]), _positive_root(25 / 56, 9 / 112), 1e-8),
        ExampleCheck("2", "binding_row", float(profile.binding_index + 1), 2.0, 0.5),
    ]


def reproduce_examples() -> List[ExampleCheck]:
    return example1_checks() + example2_checks()
