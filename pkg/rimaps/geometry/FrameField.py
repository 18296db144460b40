from __future__ import annotations

import typing

import numpy as np

from rimaps.common.Utils import Utils
from rimaps.expr import Expression
from rimaps.expr import ExpressionParser
from rimaps.geometry.ManifoldSpec import ManifoldSpec


class FrameField:
    """Smooth frame of a distribution on a neighbourhood of a chart.

    ``at(x)`` returns the frame at ``x`` column-wise, orthonormal in the
    manifold's metric.
    """
    manifold: ManifoldSpec
    size: int
    label: str

    def __init__(self, manifold: ManifoldSpec, size: int,
                 function: typing.Callable[[np.ndarray], np.ndarray],
                 label: str = "frame"):
        self.manifold = manifold
        self.size = size
        self.label = label
        self._function = function

    def __repr__(self) -> str:
        return "FrameField({}, {}, size={})".format(self.label,
                                                   self.manifold.name,
                                                   self.size)

    def at(self, x: np.ndarray) -> np.ndarray:
        frame = self._function(np.asarray(x, dtype=float))
        if frame.shape != (self.manifold.dim, self.size):
            raise ValueError("Frame {} has shape {}, expected {}".format(
                self.label, frame.shape, (self.manifold.dim, self.size)))
        return frame

    @staticmethod
    def from_expressions(manifold: ManifoldSpec,
                         vectors: typing.Sequence[typing.Sequence[
                             typing.Union[str, Expression]]],
                         label: str = "frame",
                         breakdown: float = 1e-8) -> FrameField:
        """Frame spanned by vector fields given component-wise; the fields
        are orthonormalised pointwise in the manifold metric."""
        parser = ExpressionParser(manifold.coords)
        fields = []
        for vector in vectors:
            if len(vector) != manifold.dim:
                raise ValueError(
                    "Vector field has {} components, {} expects {}".format(
                        len(vector), manifold.name, manifold.dim))
            fields.append([
                c if isinstance(c, Expression) else parser.parse(c)
                for c in vector
            ])

        def function(x: np.ndarray) -> np.ndarray:
            raw = np.array([[c.evaluate(x) for c in field]
                            for field in fields]).T.reshape(
                                manifold.dim, len(fields))
            frame, worst = Utils.gram_schmidt(raw, manifold.metric_values(x))
            if worst < breakdown:
                raise ArithmeticError(
                    "Frame {} is degenerate at {}".format(label, x.tolist()))
            return frame

        return FrameField(manifold, len(fields), function, label)
