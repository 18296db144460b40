from __future__ import annotations

import dataclasses

import numpy as np


@dataclasses.dataclass(frozen=True)
class ShapeOperator:
    """A_V on range F_* at one point, for one normal vector V.

    ``images[:, i]`` is A_V F_*H_i and ``matrix[i, j]`` is
    g2(A_V F_*H_i, F_*H_j) for the horizontal frame H.
    ``normal_derivatives[:, i]`` holds the range-complement frame
    coefficients of the normal connection derivative of V along H_i.
    """
    x: np.ndarray
    normal: np.ndarray
    pushed: np.ndarray
    images: np.ndarray
    matrix: np.ndarray
    normal_derivatives: np.ndarray
    target_metric: np.ndarray

    def apply(self, w: np.ndarray) -> np.ndarray:
        """A_V w for w in range F_*, by expanding w in the pushed frame."""
        if self.pushed.shape[1] == 0:
            return np.zeros_like(w, dtype=float)
        coefficients, *_ = np.linalg.lstsq(self.pushed, w, rcond=None)
        return self.images @ coefficients

    def symmetry_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T), initial=0.0))
