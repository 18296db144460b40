from __future__ import annotations

import dataclasses

import numpy as np

from rimaps.common.Utils import Utils


@dataclasses.dataclass(frozen=True)
class SecondFundamentalFormMap:
    """(nabla F_*)(d_i, d_j) on the coordinate basis at one point.

    ``values[i, j]`` is a vector at F(p) in target coordinates.
    """
    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    target_metric: np.ndarray

    def __call__(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("ija,i,j->a", self.values, u, v)

    def quadratic(self, u: np.ndarray) -> np.ndarray:
        return self(u, u)

    def symmetry_defect(self) -> float:
        return float(
            np.max(np.abs(self.values - np.swapaxes(self.values, 0, 1)),
                   initial=0.0))

    def max_norm(self) -> float:
        """Largest target norm of the quadratic form over the polarization
        set of the coordinate basis."""
        m = self.values.shape[0]
        return max((Utils.norm(self.quadratic(u), self.target_metric)
                    for u in Utils.polarization_set(m)),
                   default=0.0)
