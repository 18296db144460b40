from __future__ import annotations

import logging
import typing

import numpy as np

from rimaps.geometry.Christoffel import Christoffel
from rimaps.geometry.ManifoldSpec import ManifoldSpec
from rimaps.geometry.ManifoldSpec import Point
from rimaps.geometry.ManifoldSpec import TangentVector
from rimaps.verdicts.VerificationReport import Verdict
from rimaps.verdicts.VerificationReport import VerificationReport

if typing.TYPE_CHECKING:
    from rimaps.core.Session import Session

PointLike = typing.Union[Point, typing.Sequence[float], np.ndarray]


class GeometryAnalyzer:
    """Metric, connection and complex-structure computations on a chart."""
    _LOGGER: logging = logging.getLogger(__name__)

    def __init__(self, session: Session):
        self._session = session

    @staticmethod
    def coordinates(manifold: ManifoldSpec, p: PointLike) -> np.ndarray:
        if isinstance(p, Point):
            if p.manifold is not manifold and p.manifold.name != manifold.name:
                raise ValueError("Point lies on {}, not {}".format(
                    p.manifold.name, manifold.name))
            return p.array
        x = np.asarray(p, dtype=float)
        if x.shape != (manifold.dim, ):
            raise ValueError("Point has shape {}, {} expects ({},)".format(
                x.shape, manifold.name, manifold.dim))
        return x

    def _check_positive_definite(self, manifold: ManifoldSpec,
                                 metric: np.ndarray, x: np.ndarray) -> None:
        smallest = float(np.linalg.eigvalsh(metric)[0])
        if not smallest > self._session.configuration().pd_threshold:
            raise GeometryAnalyzer.NotPositiveDefiniteException(
                manifold.name, x, smallest)

    def metric_at(self, manifold: ManifoldSpec, p: PointLike) -> np.ndarray:
        x = self.coordinates(manifold, p)
        metric = manifold.metric_values(x)
        self._check_positive_definite(manifold, metric, x)
        return metric

    def christoffel_at(self, manifold: ManifoldSpec,
                       p: PointLike) -> Christoffel:
        x = self.coordinates(manifold, p)
        metric, derivatives = manifold.metric_jets(x)
        self._check_positive_definite(manifold, metric, x)
        try:
            inverse = np.linalg.inv(metric)
        except np.linalg.LinAlgError:
            raise GeometryAnalyzer.SingularMetricException(
                "Metric of {} is singular at {}".format(
                    manifold.name, x.tolist()))
        return Christoffel.from_metric(metric, derivatives, inverse)

    def metric_compatibility_defect(self, manifold: ManifoldSpec,
                                    p: PointLike) -> float:
        x = self.coordinates(manifold, p)
        metric, derivatives = manifold.metric_jets(x)
        return self.christoffel_at(manifold, x).compatibility_defect(
            metric, derivatives)

    def structure_at(self, manifold: ManifoldSpec,
                     p: PointLike) -> np.ndarray:
        if not manifold.has_complex_structure():
            raise GeometryAnalyzer.NoComplexStructureException(manifold.name)
        return manifold.structure_values(self.coordinates(manifold, p))

    def apply_J(self, manifold: ManifoldSpec,
                u: TangentVector) -> TangentVector:
        structure = self.structure_at(manifold, u.base)
        return TangentVector(u.base, tuple(structure @ u.array))

    def nabla_structure_at(self, manifold: ManifoldSpec,
                           p: PointLike) -> np.ndarray:
        """(nabla J)^i_jk = d_k J^i_j + Gamma^i_kl J^l_j - Gamma^l_kj J^i_l."""
        if not manifold.has_complex_structure():
            raise GeometryAnalyzer.NoComplexStructureException(manifold.name)
        x = self.coordinates(manifold, p)
        structure, derivatives = manifold.structure_jets(x)
        gamma = self.christoffel_at(manifold, x).gamma
        return (derivatives + np.einsum("ikl,lj->ijk", gamma, structure) -
                np.einsum("lkj,il->ijk", gamma, structure))

    def hermitian_residuals(self, manifold: ManifoldSpec,
                            p: PointLike) -> typing.Dict[str, float]:
        x = self.coordinates(manifold, p)
        structure = self.structure_at(manifold, x)
        metric = self.metric_at(manifold, x)
        m = manifold.dim
        square = structure @ structure + np.eye(m)
        # g(J e_i, J e_j) - g(e_i, e_j) over the coordinate basis
        compatibility = structure.T @ metric @ structure - metric
        return {
            "j_squared": float(np.max(np.abs(square))),
            "compatibility": float(np.max(np.abs(compatibility))),
        }

    def check_almost_hermitian(self,
                               manifold: ManifoldSpec,
                               samples: typing.Sequence[PointLike],
                               tol: float = None) -> VerificationReport:
        tol = self._session.configuration().exact_tolerance \
            if tol is None else tol
        name = "almost_hermitian"
        if not manifold.has_complex_structure():
            self._LOGGER.warning("{} declares no complex structure".format(
                manifold.name))
            return VerificationReport.vacuous(
                name, tol, 0,
                "gate failed: {} declares no complex structure".format(
                    manifold.name))
        points = [self.coordinates(manifold, p) for p in samples]
        residuals = self._session.map_samples(
            lambda x: self.hermitian_residuals(manifold, x), points)
        accumulator = VerificationReport.Accumulator()
        for x, values in zip(points, residuals):
            accumulator.add(x, values)
        report = accumulator.build(name, tol)
        self._LOGGER.info("{} on {}: {}".format(name, manifold.name,
                                                report.verdict.value))
        return report

    def check_kahler(self,
                     manifold: ManifoldSpec,
                     samples: typing.Sequence[PointLike],
                     tol: float = None) -> VerificationReport:
        tol = self._session.configuration().exact_tolerance \
            if tol is None else tol
        name = "kahler"
        hermitian = self.check_almost_hermitian(manifold, samples, tol)
        if hermitian.verdict is not Verdict.PASS:
            self._LOGGER.warning(
                "Kahler check on {} skipped: almost Hermitian gate is {}".
                format(manifold.name, hermitian.verdict.value))
            return VerificationReport.vacuous(
                name, tol, hermitian.samples,
                "gate failed: almost_hermitian is {}".format(
                    hermitian.verdict.value))
        points = [self.coordinates(manifold, p) for p in samples]
        tensors = self._session.map_samples(
            lambda x: self.nabla_structure_at(manifold, x), points)
        accumulator = VerificationReport.Accumulator()
        for x, tensor in zip(points, tensors):
            i, j, k = np.unravel_index(np.argmax(np.abs(tensor)), tensor.shape)
            accumulator.add(
                x, {"nabla_j": float(np.abs(tensor[i, j, k]))},
                "component ({}, {}, {})".format(i + 1, j + 1, k + 1))
        report = accumulator.build(name, tol)
        self._LOGGER.info("{} on {}: {}".format(name, manifold.name,
                                                report.verdict.value))
        return report

    class NotPositiveDefiniteException(ArithmeticError):
        smallest_eigenvalue: float

        def __init__(self, name: str, x: np.ndarray,
                     smallest_eigenvalue: float):
            super().__init__(
                "Metric of {} is not positive definite at {}: smallest "
                "eigenvalue {!r}".format(name, x.tolist(),
                                         smallest_eigenvalue))
            self.smallest_eigenvalue = smallest_eigenvalue

    class SingularMetricException(ArithmeticError):
        pass

    class NoComplexStructureException(ValueError):
        def __init__(self, name: str):
            super().__init__(
                "{} declares no complex structure".format(name))
