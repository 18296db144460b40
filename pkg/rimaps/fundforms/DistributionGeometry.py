from __future__ import annotations

import dataclasses

import numpy as np

from rimaps.common.Utils import Utils


@dataclasses.dataclass(frozen=True)
class DistributionGeometry:
    """Second-order invariants of a distribution at one point.

    Arrays are indexed by frame positions ``[a, b]`` and hold vectors in
    the complementary distribution:

    * ``a_form[a, b]`` is the complement part of nabla_{E_a} E_b,
    * ``b_form`` is its symmetrisation,
    * ``i_form[a, b]`` is ``a_form[a, b] - a_form[b, a]``,
    * ``mean_curvature`` is the frame average of ``b_form[a, a]``.

    ``bracket_defect`` is the largest deviation between ``i_form`` and the
    complement part of the Lie bracket [E_a, E_b].
    """
    x: np.ndarray
    frame: np.ndarray
    metric: np.ndarray
    a_form: np.ndarray
    b_form: np.ndarray
    i_form: np.ndarray
    mean_curvature: np.ndarray
    bracket_defect: float

    @property
    def size(self) -> int:
        return self.frame.shape[1]

    def _max_norm(self, values: np.ndarray) -> float:
        return max((Utils.norm(values[a, b], self.metric)
                    for a in range(self.size) for b in range(self.size)),
                   default=0.0)

    def b_norm(self) -> float:
        return self._max_norm(self.b_form)

    def i_norm(self) -> float:
        return self._max_norm(self.i_form)

    def mean_curvature_norm(self) -> float:
        return Utils.norm(self.mean_curvature, self.metric)

    def umbilical_residual(self) -> float:
        """Largest |B(E_a, E_b) - delta_ab H| with H the mean curvature."""
        defect = self.b_form.copy()
        for a in range(self.size):
            defect[a, a] = defect[a, a] - self.mean_curvature
        return self._max_norm(defect)

    def symmetry_defect(self) -> float:
        return float(
            np.max(np.abs(self.b_form - np.swapaxes(self.b_form, 0, 1)),
                   initial=0.0))

    def antisymmetry_defect(self) -> float:
        return float(
            np.max(np.abs(self.i_form + np.swapaxes(self.i_form, 0, 1)),
                   initial=0.0))

    def is_totally_geodesic(self, tol: float) -> bool:
        return self.b_norm() < tol

    def is_umbilical(self, tol: float) -> bool:
        return self.umbilical_residual() < tol

    def is_minimal(self, tol: float) -> bool:
        return self.mean_curvature_norm() < tol
