from __future__ import annotations

import typing

import numpy as np

from rimaps.expr import Expression
from rimaps.expr import ExpressionParser
from rimaps.geometry.ManifoldSpec import ManifoldSpec


class MapSpec:
    """Smooth map between two charts, one expression per target coordinate."""
    name: str
    source: ManifoldSpec
    target: ManifoldSpec
    components: typing.Tuple[Expression, ...]

    def __init__(self, name: str, source: ManifoldSpec, target: ManifoldSpec,
                 components: typing.Sequence[Expression]):
        if len(components) != target.dim:
            raise MapSpec.InvalidMapException(
                "Map {} has {} components but {} has dimension {}".format(
                    name, len(components), target.name, target.dim))
        for a, component in enumerate(components):
            if any(i >= source.dim for i in component.coordinates()):
                raise MapSpec.InvalidMapException(
                    "Component {} of {} references a coordinate outside {}".
                    format(a + 1, name, source.name))
        self.name = name
        self.source = source
        self.target = target
        self.components = tuple(components)

    def __repr__(self) -> str:
        return "MapSpec({}: {} -> {})".format(self.name, self.source.name,
                                              self.target.name)

    @staticmethod
    def parse(name: str, source: ManifoldSpec, target: ManifoldSpec,
              components: typing.Sequence[str]) -> MapSpec:
        parser = ExpressionParser(source.coords)
        return MapSpec(name, source, target,
                       [parser.parse(text) for text in components])

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.array([c.evaluate(x) for c in self.components])

    def jets(
        self, x: np.ndarray
    ) -> typing.Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Values F^a, Jacobian dF[a, i] and hessians d2F[a, i, j]."""
        n = self.target.dim
        m = self.source.dim
        values = np.empty(n)
        jacobian = np.empty((n, m))
        hessians = np.empty((n, m, m))
        for a, component in enumerate(self.components):
            jet = component.jet(x)
            values[a] = jet.value
            jacobian[a] = jet.gradient
            hessians[a] = jet.hessian
        return values, jacobian, hessians

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        return self.jets(x)[1]

    class InvalidMapException(ValueError):
        pass
