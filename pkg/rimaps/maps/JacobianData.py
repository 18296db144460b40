from __future__ import annotations

import dataclasses

import numpy as np


@dataclasses.dataclass(frozen=True)
class JacobianData:
    """Derivative of a map at a point.

    ``singular_values`` are those of the metric-weighted Jacobian
    C2^T dF C1^-T, where G1 = C1 C1^T and G2 = C2 C2^T are the Cholesky
    factors of the two metrics, so they measure stretching in the metrics
    rather than in coordinates.
    """
    matrix: np.ndarray
    singular_values: np.ndarray
    rank: int
    threshold: float

    @staticmethod
    def from_matrix(matrix: np.ndarray, source_metric: np.ndarray,
                    target_metric: np.ndarray,
                    threshold: float) -> JacobianData:
        weighted = JacobianData.weighted(matrix, source_metric, target_metric)
        singular_values = np.linalg.svd(weighted, compute_uv=False)
        return JacobianData(matrix, singular_values,
                            JacobianData.count_rank(singular_values, threshold),
                            threshold)

    @staticmethod
    def weighted(matrix: np.ndarray, source_metric: np.ndarray,
                 target_metric: np.ndarray) -> np.ndarray:
        c1 = np.linalg.cholesky(source_metric)
        c2 = np.linalg.cholesky(target_metric)
        # C2^T dF C1^-T, solved instead of inverted
        return np.linalg.solve(c1, (c2.T @ matrix).T).T

    @staticmethod
    def count_rank(singular_values: np.ndarray, threshold: float) -> int:
        if singular_values.size == 0:
            return 0
        sigma_max = float(singular_values[0])
        if sigma_max == 0:
            return 0
        return int(np.sum(singular_values > threshold * sigma_max))

    @property
    def sigma_max(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.size \
            else 0.0

    def is_proper(self) -> bool:
        n, m = self.matrix.shape
        return 0 < self.rank < min(m, n)

    def kind(self) -> str:
        n, m = self.matrix.shape
        if self.rank == 0:
            return "constant"
        if self.rank == m and self.rank == n:
            return "local-diffeomorphism"
        if self.rank == m:
            return "immersion"
        if self.rank == n:
            return "submersion"
        return "proper"

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v
