from __future__ import annotations

import logging
import typing

import numpy as np

from rimaps.common.Utils import Utils
from rimaps.fundforms.DistributionGeometry import DistributionGeometry
from rimaps.fundforms.SecondFundamentalFormMap import SecondFundamentalFormMap
from rimaps.fundforms.ShapeOperator import ShapeOperator
from rimaps.geometry.FrameField import FrameField
from rimaps.geometry.GeometryAnalyzer import GeometryAnalyzer
from rimaps.geometry.GeometryAnalyzer import PointLike
from rimaps.geometry.ManifoldSpec import ManifoldSpec
from rimaps.geometry.ManifoldSpec import TangentVector
from rimaps.maps.FrameBundle import FrameBundle
from rimaps.maps.MapSpec import MapSpec
from rimaps.verdicts.VerificationReport import VerificationReport

if typing.TYPE_CHECKING:
    from rimaps.core.Session import Session

Field = typing.Callable[[np.ndarray], np.ndarray]


class FundamentalForms:
    """Second fundamental forms, shape operators and distribution tensors.

    Map, metric and J derivatives come from exact jets. Derivatives of
    frames use central differences with the frame pivots held fixed.
    """
    _LOGGER: logging = logging.getLogger(__name__)
    extensions = ("frame", "projected")

    def __init__(self, session: Session):
        self._session = session

    def step_at(self, x: np.ndarray) -> float:
        return Utils.step_size(x, self._session.configuration().fd_step)

    def map_sff_at(self, f: MapSpec, p: PointLike) -> SecondFundamentalFormMap:
        """(nabla F_*)(d_i, d_j)^a = d_i d_j F^a
        + Gamma2^a_bc d_i F^b d_j F^c - Gamma1^k_ij d_k F^a."""
        geometry = self._session.geometry()
        x = GeometryAnalyzer.coordinates(f.source, p)
        y, jacobian, hessians = f.jets(x)
        gamma1 = geometry.christoffel_at(f.source, x).gamma
        gamma2 = geometry.christoffel_at(f.target, y).gamma
        values = (np.einsum("aij->ija", hessians) +
                  np.einsum("abc,bi,cj->ija", gamma2, jacobian, jacobian) -
                  np.einsum("kij,ak->ija", gamma1, jacobian))
        return SecondFundamentalFormMap(x, y, values,
                                        geometry.metric_at(f.target, y))

    def covariant_derivative(self, manifold: ManifoldSpec, x: np.ndarray,
                             field: Field, direction: np.ndarray) -> np.ndarray:
        """nabla_direction of a vector field on ``manifold`` at ``x``."""
        christoffel = self._session.geometry().christoffel_at(manifold, x)
        h = self.step_at(x)
        return (Utils.central_difference(field, x, direction, h) +
                christoffel.contract(direction, field(x)))

    def pullback_derivative(self, f: MapSpec, x: np.ndarray, field: Field,
                            direction: np.ndarray) -> np.ndarray:
        """nabla^F_direction of a vector field along F, where ``field``
        maps a source point to a target vector at its image."""
        y, jacobian, _ = f.jets(x)
        christoffel = self._session.geometry().christoffel_at(f.target, y)
        h = self.step_at(x)
        return (Utils.central_difference(field, x, direction, h) +
                christoffel.contract(jacobian @ direction, field(x)))

    def _normal_field(self, f: MapSpec, frames: FrameBundle, v: np.ndarray,
                      extension: str) -> Field:
        maps = self._session.maps()
        pivot = frames.pivot
        if extension == "frame":
            coefficients = Utils.coefficients(frames.normal, v,
                                              frames.target_metric)
            return lambda x: maps.split_at(f, x, pivot).normal @ coefficients
        if extension == "projected":
            return lambda x: maps.split_at(f, x, pivot).normal_projector() @ v
        raise TypeError("Unknown extension: {}".format(extension))

    def shape_operator_at(self,
                          f: MapSpec,
                          p: PointLike,
                          v: typing.Union[TangentVector, np.ndarray,
                                          typing.Sequence[float]],
                          extension: str = "frame",
                          frames: FrameBundle = None) -> ShapeOperator:
        """A_V F_*H_i = -(range part of nabla2_{F_*H_i} V) for V normal to
        range F_*, V extended along F by ``extension``."""
        x = GeometryAnalyzer.coordinates(f.source, p)
        if frames is None:
            frames = self._session.maps().split_at(f, x)
        w = v.array if isinstance(v, TangentVector) else np.asarray(
            v, dtype=float)
        g2 = frames.target_metric
        leak = Utils.norm(frames.range_projector() @ w, g2)
        tol = self._session.configuration().exact_tolerance
        if not leak < tol * max(1.0, Utils.norm(w, g2)):
            raise FundamentalForms.NotNormalException(
                "Vector {} has a range component {!r}".format(
                    w.tolist(), leak))
        pushed = frames.pushed_horizontal()
        r = frames.rank
        k = frames.normal.shape[1]
        images = np.zeros((frames.target_dim, r))
        normal_derivatives = np.zeros((k, r))
        if k > 0:
            field = self._normal_field(f, frames, w, extension)
            for i in range(r):
                derivative = self.pullback_derivative(
                    f, x, field, frames.horizontal[:, i])
                images[:, i] = -(frames.range_projector() @ derivative)
                normal_derivatives[:, i] = Utils.coefficients(
                    frames.normal, derivative, g2)
        matrix = images.T @ g2 @ pushed
        return ShapeOperator(x, w, pushed, images, matrix, normal_derivatives,
                             g2)

    def shape_identity_residual(self, f: MapSpec, p: PointLike,
                                v: np.ndarray, u: np.ndarray,
                                w: np.ndarray) -> float:
        """|g2(A_V F_*U, F_*W) - g2(V, (nabla F_*)(U, W))| for horizontal U,
        W."""
        x = GeometryAnalyzer.coordinates(f.source, p)
        frames = self._session.maps().split_at(f, x)
        shape = self.shape_operator_at(f, x, v, frames=frames)
        sff = self.map_sff_at(f, x)
        g2 = frames.target_metric
        left = Utils.inner(shape.apply(frames.push(u)), frames.push(w), g2)
        right = Utils.inner(np.asarray(v, dtype=float), sff(u, w), g2)
        return abs(left - right)

    def distribution_geometry(self, manifold: ManifoldSpec,
                              frame_field: FrameField,
                              p: PointLike) -> DistributionGeometry:
        geometry = self._session.geometry()
        x = GeometryAnalyzer.coordinates(manifold, p)
        metric = geometry.metric_at(manifold, x)
        christoffel = geometry.christoffel_at(manifold, x)
        frame = frame_field.at(x)
        q = frame.shape[1]
        m = manifold.dim
        h = self.step_at(x)
        derivatives = np.zeros((q, q, m))
        for a in range(q):
            try:
                forward = frame_field.at(x + h * frame[:, a])
                backward = frame_field.at(x - h * frame[:, a])
            except (ArithmeticError, ValueError) as ex:
                raise FundamentalForms.StencilException(
                    "{} is not defined on the stencil around {}: {}".format(
                        frame_field.label, x.tolist(), ex)) from ex
            derivatives[a] = ((forward - backward) / (2.0 * h)).T
        nabla = derivatives + np.einsum("kij,ia,jb->abk", christoffel.gamma,
                                        frame, frame)
        complement = np.eye(m) - Utils.projector(frame, metric)
        a_form = np.einsum("kl,abl->abk", complement, nabla)
        b_form = 0.5 * (a_form + np.swapaxes(a_form, 0, 1))
        i_form = a_form - np.swapaxes(a_form, 0, 1)
        bracket = derivatives - np.swapaxes(derivatives, 0, 1)
        bracket_part = np.einsum("kl,abl->abk", complement, bracket)
        bracket_defect = max((Utils.norm(i_form[a, b] - bracket_part[a, b],
                                         metric)
                              for a in range(q) for b in range(q)),
                             default=0.0)
        mean = b_form[range(q), range(q)].sum(axis=0) / q if q else \
            np.zeros(m)
        return DistributionGeometry(x, frame, metric, a_form, b_form, i_form,
                                    mean, bracket_defect)

    def check_totally_geodesic_map(self,
                                   f: MapSpec,
                                   samples: typing.Sequence[PointLike],
                                   tol: float = None) -> VerificationReport:
        tol = self._session.configuration().exact_tolerance \
            if tol is None else tol
        name = "totally_geodesic_map"
        points = [GeometryAnalyzer.coordinates(f.source, p) for p in samples]
        norms = self._session.map_samples(
            lambda x: self.map_sff_at(f, x).max_norm(), points)
        accumulator = VerificationReport.Accumulator()
        for x, value in zip(points, norms):
            accumulator.add(x, {"second_fundamental_form": value})
        report = accumulator.build(name, tol)
        self._LOGGER.info("{} on {}: {}".format(name, f.name,
                                                report.verdict.value))
        return report

    def fiber_geometry_at(self, f: MapSpec,
                          p: PointLike) -> DistributionGeometry:
        x = GeometryAnalyzer.coordinates(f.source, p)
        field = self._session.maps().frame_field(f, x, "vertical")
        return self.distribution_geometry(f.source, field, x)

    def check_umbilical_fibers(self,
                               f: MapSpec,
                               samples: typing.Sequence[PointLike],
                               tol: float = None) -> VerificationReport:
        """Fit h2(V_a, V_b) = delta_ab H on the fibres; the fitted H per
        sample is reported in ``details['mean_curvature']``."""
        tol = self._session.configuration().fd_tolerance \
            if tol is None else tol
        name = "umbilical_fibers"
        points = [GeometryAnalyzer.coordinates(f.source, p) for p in samples]
        if not points:
            return VerificationReport.vacuous(name, tol, 0, "no samples")
        if self._session.maps().split_at(f, points[0]).vertical.shape[1] == 0:
            self._LOGGER.warning("{} has no fibers to test".format(f.name))
            return VerificationReport.vacuous(
                name, tol, len(points),
                "gate failed: ker F_* is trivial, there are no fibers")
        fibers = self._session.map_samples(
            lambda x: self.fiber_geometry_at(f, x), points)
        accumulator = VerificationReport.Accumulator()
        for x, fiber in zip(points, fibers):
            accumulator.add(x, {"umbilical": fiber.umbilical_residual()})
        mean_norm = max(fiber.mean_curvature_norm() for fiber in fibers)
        sff_norm = max(fiber.b_norm() for fiber in fibers)
        report = accumulator.build(
            name, tol, {
                "mean_curvature": [fiber.mean_curvature.tolist()
                                   for fiber in fibers],
                "mean_curvature_norm": mean_norm,
                "fiber_sff_norm": sff_norm,
                "minimal": mean_norm < tol,
                "totally_geodesic": sff_norm < tol,
            })
        self._LOGGER.info("{} on {}: {} (|H| <= {!r})".format(
            name, f.name, report.verdict.value, mean_norm))
        return report

    class NotNormalException(ValueError):
        pass

    class StencilException(ArithmeticError):
        pass
