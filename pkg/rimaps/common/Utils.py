from __future__ import annotations

import itertools
import typing

import numpy as np


class Utils:
    @staticmethod
    def inner(u: np.ndarray, v: np.ndarray, metric: np.ndarray) -> float:
        return float(u @ metric @ v)

    @staticmethod
    def norm(v: np.ndarray, metric: np.ndarray) -> float:
        return float(np.sqrt(max(v @ metric @ v, 0.0)))

    @staticmethod
    def gram_schmidt(
            vectors: np.ndarray,
            metric: np.ndarray) -> typing.Tuple[np.ndarray, float]:
        """Modified Gram-Schmidt on the columns of ``vectors``.

        Returns the orthonormal columns and the smallest ratio between a
        column's norm after removing earlier directions and its norm before,
        which callers compare against their breakdown threshold.
        """
        frame = np.array(vectors, dtype=float, copy=True)
        if frame.ndim != 2:
            raise TypeError("Expected a matrix of column vectors")
        worst = 1.0
        for k in range(frame.shape[1]):
            original = Utils.norm(frame[:, k], metric)
            for j in range(k):
                frame[:, k] -= Utils.inner(frame[:, j], frame[:, k],
                                           metric) * frame[:, j]
            remaining = Utils.norm(frame[:, k], metric)
            ratio = remaining / original if original > 0 else 0.0
            worst = min(worst, ratio)
            if remaining == 0:
                return frame, 0.0
            frame[:, k] /= remaining
        return frame, worst

    @staticmethod
    def normalize_signs(vectors: np.ndarray) -> np.ndarray:
        """Flip each column so its largest-magnitude entry is positive."""
        result = np.array(vectors, dtype=float, copy=True)
        for k in range(result.shape[1]):
            pivot = int(np.argmax(np.abs(result[:, k])))
            if result[pivot, k] < 0:
                result[:, k] = -result[:, k]
        return result

    @staticmethod
    def projector(frame: np.ndarray, metric: np.ndarray) -> np.ndarray:
        """Orthogonal projection onto the span of an orthonormal frame."""
        if frame.shape[1] == 0:
            return np.zeros((frame.shape[0], frame.shape[0]))
        return frame @ frame.T @ metric

    @staticmethod
    def coefficients(frame: np.ndarray, v: np.ndarray,
                     metric: np.ndarray) -> np.ndarray:
        return frame.T @ metric @ v

    @staticmethod
    def polarization_set(dim: int) -> typing.List[np.ndarray]:
        """Coordinate vectors e_i together with every e_i + e_j, e_i - e_j.

        A symmetric bilinear form vanishes exactly when its quadratic form
        vanishes on this set.
        """
        basis = np.eye(dim)
        vectors = [basis[i] for i in range(dim)]
        for i, j in itertools.combinations(range(dim), 2):
            vectors.append(basis[i] + basis[j])
            vectors.append(basis[i] - basis[j])
        return vectors

    @staticmethod
    def step_size(x: np.ndarray, scale: float) -> float:
        return scale * (1.0 + float(np.linalg.norm(x)))

    @staticmethod
    def central_difference(function: typing.Callable[[np.ndarray],
                                                     np.ndarray],
                           x: np.ndarray, direction: np.ndarray,
                           h: float) -> np.ndarray:
        return (function(x + h * direction) -
                function(x - h * direction)) / (2.0 * h)
