from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples on the uniform grid linspace(lo, hi, len(values))."""

    lo: float
    hi: float
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 3:
            raise ValueError("a grid function needs at least 3 samples")
        if not self.hi > self.lo:
            raise ValueError("grid needs hi > lo")
        object.__setattr__(self, "values", values)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.values.size)

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / (self.values.size - 1)

    def same_grid(self, other: "GridFunction") -> bool:
        return (self.lo, self.hi, self.values.size) == (other.lo, other.hi, other.values.size)
