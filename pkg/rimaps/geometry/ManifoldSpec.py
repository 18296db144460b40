from __future__ import annotations

import dataclasses
import logging
import typing

import numpy as np

from rimaps.expr import Constant
from rimaps.expr import Expression
from rimaps.expr import ExpressionParser


class ManifoldSpec:
    """One coordinate chart carrying a metric and an optional almost complex
    structure, both given as expressions in the chart coordinates.

    The metric is stored as a full matrix whose entries ``(i, j)`` and
    ``(j, i)`` are the same expression object.
    """
    _LOGGER: logging = logging.getLogger(__name__)
    CANONICAL = "canonical"
    name: str
    coords: typing.Tuple[str, ...]
    metric: typing.Tuple[typing.Tuple[Expression, ...], ...]
    complex_structure: typing.Union[str, typing.Tuple[typing.Tuple[
        Expression, ...], ...], None]

    def __init__(
        self,
        name: str,
        coords: typing.Sequence[str],
        metric: typing.Sequence[typing.Sequence[Expression]],
        complex_structure: typing.Union[str, typing.Sequence[typing.Sequence[
            Expression]], None] = None,
    ):
        self.name = name
        self.coords = tuple(coords)
        m = len(self.coords)
        if m == 0:
            raise ManifoldSpec.InvalidSpecException(
                "Manifold {} has no coordinates".format(name))
        self.metric = ManifoldSpec._matrix(name, "metric", metric, m)
        for i in range(m):
            for j in range(i + 1, m):
                if self.metric[i][j] != self.metric[j][i]:
                    raise ManifoldSpec.InvalidSpecException(
                        "Metric of {} is not symmetric at ({}, {})".format(
                            name, i, j))
        if complex_structure is None:
            self.complex_structure = None
        elif complex_structure == ManifoldSpec.CANONICAL:
            self.complex_structure = ManifoldSpec.CANONICAL
        else:
            self.complex_structure = ManifoldSpec._matrix(
                name, "complex structure", complex_structure, m)
        if self.complex_structure is not None and m % 2 != 0:
            raise ManifoldSpec.InvalidSpecException(
                "Complex structure on odd-dimensional manifold {}".format(
                    name))
        self._canonical = (ManifoldSpec.canonical_structure(m)
                           if self.complex_structure == ManifoldSpec.CANONICAL
                           else None)

    def __repr__(self) -> str:
        return "ManifoldSpec({}, dim={})".format(self.name, self.dim)

    @staticmethod
    def _matrix(name: str, what: str,
                rows: typing.Sequence[typing.Sequence[Expression]],
                m: int) -> typing.Tuple[typing.Tuple[Expression, ...], ...]:
        if len(rows) != m or any(len(row) != m for row in rows):
            raise ManifoldSpec.InvalidSpecException(
                "The {} of {} must be {}x{}".format(what, name, m, m))
        for row in rows:
            for entry in row:
                if any(index >= m for index in entry.coordinates()):
                    raise ManifoldSpec.InvalidSpecException(
                        "The {} of {} references an unknown coordinate".format(
                            what, name))
        return tuple(tuple(row) for row in rows)

    @staticmethod
    def canonical_structure(m: int) -> np.ndarray:
        """e_(2k-1) -> e_(2k), e_(2k) -> -e_(2k-1); column j is J(e_j)."""
        structure = np.zeros((m, m))
        for k in range(0, m, 2):
            structure[k + 1, k] = 1.0
            structure[k, k + 1] = -1.0
        return structure

    @property
    def dim(self) -> int:
        return len(self.coords)

    def has_complex_structure(self) -> bool:
        return self.complex_structure is not None

    def point(self, x: typing.Sequence[float]) -> Point:
        return Point(self, tuple(float(c) for c in x))

    def vector(self, x: typing.Sequence[float],
               v: typing.Sequence[float]) -> TangentVector:
        return TangentVector(self.point(x), tuple(float(c) for c in v))

    def metric_values(self, x: np.ndarray) -> np.ndarray:
        m = self.dim
        values = np.empty((m, m))
        for i in range(m):
            for j in range(i, m):
                values[i, j] = values[j, i] = self.metric[i][j].evaluate(x)
        return values

    def metric_jets(self,
                    x: np.ndarray) -> typing.Tuple[np.ndarray, np.ndarray]:
        """Metric values and first derivatives, ``dg[i, j, k] = d_k g_ij``."""
        m = self.dim
        values = np.empty((m, m))
        derivatives = np.empty((m, m, m))
        for i in range(m):
            for j in range(i, m):
                jet = self.metric[i][j].jet(x)
                values[i, j] = values[j, i] = jet.value
                derivatives[i, j, :] = derivatives[j, i, :] = jet.gradient
        return values, derivatives

    def structure_values(self, x: np.ndarray) -> np.ndarray:
        if self._canonical is not None:
            return self._canonical.copy()
        m = self.dim
        return np.array([[self.complex_structure[i][j].evaluate(x)
                          for j in range(m)] for i in range(m)])

    def structure_jets(self,
                       x: np.ndarray) -> typing.Tuple[np.ndarray, np.ndarray]:
        """``J[i, j] = J^i_j`` and ``dJ[i, j, k] = d_k J^i_j``."""
        m = self.dim
        if self._canonical is not None:
            return self._canonical.copy(), np.zeros((m, m, m))
        values = np.empty((m, m))
        derivatives = np.empty((m, m, m))
        for i in range(m):
            for j in range(m):
                jet = self.complex_structure[i][j].jet(x)
                values[i, j] = jet.value
                derivatives[i, j, :] = jet.gradient
        return values, derivatives

    class InvalidSpecException(ValueError):
        pass

    class Builder:
        name: str
        coords: typing.List[str]
        entries: typing.Dict[typing.Tuple[int, int], Expression]
        structure: typing.Union[str, typing.Dict[typing.Tuple[int, int],
                                                 Expression], None] = None

        def __init__(self, name: str, coords: typing.Sequence[str]):
            self.name = name
            self.coords = list(coords)
            self.entries = {}
            self._parser = ExpressionParser(self.coords)

        def _expression(self,
                        value: typing.Union[str, float,
                                            Expression]) -> Expression:
            if isinstance(value, Expression):
                return value
            if isinstance(value, (int, float)):
                return Constant(float(value))
            return self._parser.parse(value)

        def _index(self, i: int) -> int:
            if not 0 <= i < len(self.coords):
                raise ManifoldSpec.InvalidSpecException(
                    "Index {} out of range for {}".format(i, self.name))
            return i

        def set_identity_metric(self) -> ManifoldSpec.Builder:
            self.entries = {(i, i): Constant(1.0)
                            for i in range(len(self.coords))}
            return self

        def set_metric(
            self, i: int, j: int, value: typing.Union[str, float, Expression]
        ) -> ManifoldSpec.Builder:
            i, j = sorted((self._index(i), self._index(j)))
            self.entries[(i, j)] = self._expression(value)
            return self

        def set_canonical_structure(self) -> ManifoldSpec.Builder:
            self.structure = ManifoldSpec.CANONICAL
            return self

        def set_structure(
            self, i: int, j: int, value: typing.Union[str, float, Expression]
        ) -> ManifoldSpec.Builder:
            if not isinstance(self.structure, dict):
                self.structure = {}
            self.structure[(self._index(i),
                            self._index(j))] = self._expression(value)
            return self

        def build(self) -> ManifoldSpec:
            m = len(self.coords)
            zero = Constant(0.0)
            metric = [[
                self.entries.get((min(i, j), max(i, j)), zero)
                for j in range(m)
            ] for i in range(m)]
            structure = self.structure
            if isinstance(structure, dict):
                structure = [[structure.get((i, j), zero) for j in range(m)]
                             for i in range(m)]
            return ManifoldSpec(self.name, self.coords, metric, structure)


@dataclasses.dataclass(frozen=True)
class Point:
    manifold: ManifoldSpec
    x: typing.Tuple[float, ...]

    def __post_init__(self):
        if len(self.x) != self.manifold.dim:
            raise ValueError("Point has {} coordinates, {} expects {}".format(
                len(self.x), self.manifold.name, self.manifold.dim))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.x, dtype=float)


@dataclasses.dataclass(frozen=True)
class TangentVector:
    base: Point
    v: typing.Tuple[float, ...]

    def __post_init__(self):
        if len(self.v) != self.base.manifold.dim:
            raise ValueError(
                "Vector has {} components, {} expects {}".format(
                    len(self.v), self.base.manifold.name,
                    self.base.manifold.dim))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.v, dtype=float)
