"""Simulated trajectories and their CSV export."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd


@dataclass(frozen=True, eq=False)
class SimulationTrace:
    """States x(t_k) on an increasing time grid starting at 0."""

    times: np.ndarray
    states: np.ndarray
    discrete: bool = False
    norm_phi: Optional[float] = None
    label: str = ""

    @property
    def n(self) -> int:
        return self.states.shape[1]

    @property
    def norms(self) -> np.ndarray:
        """l1 norm of the state at every time."""
        return np.abs(self.states).sum(axis=1)

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    def to_frame(self) -> pd.DataFrame:
        """Columns ``t, x1, ..., xn, norm``."""
        frame = pd.DataFrame(self.states, columns=[f"x{i + 1}" for i in range(self.n)])
        frame.insert(0, "t", self.times)
        frame["norm"] = self.norms
        return frame

    def to_csv(self, path_or_buffer=None) -> Optional[str]:
        return self.to_frame().to_csv(path_or_buffer, index=False)
