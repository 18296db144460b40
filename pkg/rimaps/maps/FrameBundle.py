from __future__ import annotations

import dataclasses

import numpy as np

from rimaps.common.Utils import Utils


@dataclasses.dataclass(frozen=True)
class PivotRecord:
    """Frames at the anchor point of a neighbourhood.

    Frames at nearby points are the Gram-Schmidt orthonormalisation of the
    anchor vectors projected onto the subspaces there, which keeps their
    orientation and ordering continuous across a stencil.
    """
    anchor: np.ndarray
    rank: int
    vertical: np.ndarray
    horizontal: np.ndarray
    range: np.ndarray
    normal: np.ndarray


@dataclasses.dataclass(frozen=True)
class FrameBundle:
    """Orthonormal frames of ker F_*, its complement, range F_* and the
    range complement; frames are stored column-wise."""
    x: np.ndarray
    y: np.ndarray
    jacobian: np.ndarray
    source_metric: np.ndarray
    target_metric: np.ndarray
    vertical: np.ndarray
    horizontal: np.ndarray
    range: np.ndarray
    normal: np.ndarray
    pivot: PivotRecord

    @property
    def rank(self) -> int:
        return self.horizontal.shape[1]

    @property
    def source_dim(self) -> int:
        return self.x.shape[0]

    @property
    def target_dim(self) -> int:
        return self.y.shape[0]

    def push(self, v: np.ndarray) -> np.ndarray:
        return self.jacobian @ v

    def vertical_projector(self) -> np.ndarray:
        return Utils.projector(self.vertical, self.source_metric)

    def horizontal_projector(self) -> np.ndarray:
        return Utils.projector(self.horizontal, self.source_metric)

    def range_projector(self) -> np.ndarray:
        return Utils.projector(self.range, self.target_metric)

    def normal_projector(self) -> np.ndarray:
        return Utils.projector(self.normal, self.target_metric)

    def pushed_horizontal(self) -> np.ndarray:
        return self.jacobian @ self.horizontal

    def orthonormality_defect(self) -> float:
        """Largest deviation of the source and target Gram matrices from
        the identity."""
        source = np.hstack([self.vertical, self.horizontal])
        target = np.hstack([self.range, self.normal])
        defects = [
            np.abs(source.T @ self.source_metric @ source -
                   np.eye(source.shape[1])),
            np.abs(target.T @ self.target_metric @ target -
                   np.eye(target.shape[1])),
        ]
        return float(max(np.max(d, initial=0.0) for d in defects))

    def kernel_defect(self) -> float:
        if self.vertical.shape[1] == 0:
            return 0.0
        return float(np.max(np.abs(self.jacobian @ self.vertical)))

    class RankMismatchException(ArithmeticError):
        expected: int
        found: int

        def __init__(self, x: np.ndarray, expected: int, found: int):
            super().__init__("Rank {} at {} differs from rank {}".format(
                found, x.tolist(), expected))
            self.expected = expected
            self.found = found

    class BreakdownException(ArithmeticError):
        pass
