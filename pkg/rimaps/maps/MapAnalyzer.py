from __future__ import annotations

import collections
import logging
import typing

import numpy as np

from rimaps.common.Utils import Utils
from rimaps.geometry.FrameField import FrameField
from rimaps.geometry.GeometryAnalyzer import GeometryAnalyzer
from rimaps.geometry.GeometryAnalyzer import PointLike
from rimaps.geometry.ManifoldSpec import TangentVector
from rimaps.maps.FrameBundle import FrameBundle
from rimaps.maps.FrameBundle import PivotRecord
from rimaps.maps.JacobianData import JacobianData
from rimaps.maps.MapSpec import MapSpec
from rimaps.verdicts.VerificationReport import Verdict
from rimaps.verdicts.VerificationReport import VerificationReport

if typing.TYPE_CHECKING:
    from rimaps.core.Session import Session


class MapAnalyzer:
    """Jacobians, frame splittings, isometry checks and adjoints of maps."""
    _LOGGER: logging = logging.getLogger(__name__)
    frame_kinds = ("vertical", "horizontal", "range", "normal")

    def __init__(self, session: Session):
        self._session = session

    def _metrics(
        self, f: MapSpec, x: np.ndarray
    ) -> typing.Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        geometry = self._session.geometry()
        values, jacobian, _ = f.jets(x)
        return (values, jacobian, geometry.metric_at(f.source, x),
                geometry.metric_at(f.target, values))

    def jacobian_at(self, f: MapSpec, p: PointLike) -> JacobianData:
        x = GeometryAnalyzer.coordinates(f.source, p)
        _, jacobian, g1, g2 = self._metrics(f, x)
        data = JacobianData.from_matrix(
            jacobian, g1, g2, self._session.configuration().rank_threshold)
        self._LOGGER.debug("Rank of {} at {}: {}".format(
            f.name, x.tolist(), data.rank))
        return data

    def check_constant_rank(
            self, f: MapSpec,
            samples: typing.Sequence[PointLike]) -> VerificationReport:
        name = "constant_rank"
        points = [GeometryAnalyzer.coordinates(f.source, p) for p in samples]
        if len(points) < 2:
            return VerificationReport.vacuous(
                name, 0.0, len(points),
                "gate failed: at least two samples are required")
        data = self._session.map_samples(lambda x: self.jacobian_at(f, x),
                                         points)
        ranks = [d.rank for d in data]
        counts = collections.Counter(ranks)
        mode = max(counts, key=lambda r: (counts[r], r))
        offender = VerificationReport.WorstOffender(None, "")
        for x, rank in zip(points, ranks):
            if rank != mode:
                offender = VerificationReport.WorstOffender(
                    x, "rank {} where {} samples have rank {}".format(
                        rank, counts[mode], mode))
                break
        distinct = sorted(counts)
        details = {
            "ranks": distinct,
            "kind": data[0].kind(),
            "proper": all(d.is_proper() for d in data),
        }
        verdict = Verdict.PASS if len(distinct) == 1 else Verdict.FAIL
        self._LOGGER.info("{} on {}: {} (ranks {})".format(
            name, f.name, verdict.value, distinct))
        return VerificationReport(name, verdict,
                                  {"rank_spread": float(distinct[-1] -
                                                        distinct[0])}, 0.0,
                                  len(points), offender, details)

    def split_at(self,
                 f: MapSpec,
                 p: PointLike,
                 pivot: PivotRecord = None) -> FrameBundle:
        conf = self._session.configuration()
        x = GeometryAnalyzer.coordinates(f.source, p)
        y, jacobian, g1, g2 = self._metrics(f, x)
        c1 = np.linalg.cholesky(g1)
        c2 = np.linalg.cholesky(g2)
        weighted = np.linalg.solve(c1, (c2.T @ jacobian).T).T
        left, sigma, right_t = np.linalg.svd(weighted, full_matrices=True)
        rank = JacobianData.count_rank(sigma, conf.rank_threshold)
        source_basis = np.linalg.solve(c1.T, right_t.T)
        target_basis = np.linalg.solve(c2.T, left)
        if pivot is None:
            vertical = self._orthonormal(
                Utils.normalize_signs(source_basis[:, rank:]), g1, x)
            horizontal = self._orthonormal(
                Utils.normalize_signs(source_basis[:, :rank]), g1, x)
            range_frame = self._orthonormal(
                Utils.normalize_signs(target_basis[:, :rank]), g2, x)
            normal = self._orthonormal(
                Utils.normalize_signs(target_basis[:, rank:]), g2, x)
            pivot = PivotRecord(x, rank, vertical, horizontal, range_frame,
                                normal)
            self._LOGGER.debug(
                "Split {} at {}: vertical {}, horizontal {}, normal {}".format(
                    f.name, x.tolist(), vertical.shape[1], rank,
                    normal.shape[1]))
        else:
            if rank != pivot.rank:
                raise FrameBundle.RankMismatchException(x, pivot.rank, rank)
            vertical = self._follow(pivot.vertical, source_basis[:, rank:], g1,
                                    x)
            horizontal = self._follow(pivot.horizontal,
                                      source_basis[:, :rank], g1, x)
            range_frame = self._follow(pivot.range, target_basis[:, :rank], g2,
                                       x)
            normal = self._follow(pivot.normal, target_basis[:, rank:], g2, x)
        return FrameBundle(x, y, jacobian, g1, g2, vertical, horizontal,
                           range_frame, normal, pivot)

    def _orthonormal(self, vectors: np.ndarray, metric: np.ndarray,
                     x: np.ndarray) -> np.ndarray:
        frame, worst = Utils.gram_schmidt(vectors, metric)
        if worst < self._session.configuration().breakdown_threshold:
            raise FrameBundle.BreakdownException(
                "Gram-Schmidt breakdown at {} (ratio {!r})".format(
                    x.tolist(), worst))
        return frame

    def _follow(self, anchor: np.ndarray, basis: np.ndarray,
                metric: np.ndarray, x: np.ndarray) -> np.ndarray:
        # basis is orthonormal in metric; project the anchor vectors onto it
        projected = Utils.projector(basis, metric) @ anchor
        for k in range(anchor.shape[1]):
            before = Utils.norm(anchor[:, k], metric)
            after = Utils.norm(projected[:, k], metric)
            if before == 0 or after / before < \
                    self._session.configuration().breakdown_threshold:
                raise FrameBundle.BreakdownException(
                    "Anchor vector {} collapses at {}".format(k, x.tolist()))
        return self._orthonormal(projected, metric, x)

    def frame_field(self,
                    f: MapSpec,
                    p: PointLike,
                    kind: str,
                    pivot: PivotRecord = None) -> FrameField:
        """Frame of one of the four subbundles as a smooth field of the
        source point, pinned to the splitting at ``p``.

        Range and normal frames are vectors at F(x) in the target chart.
        """
        if kind not in MapAnalyzer.frame_kinds:
            raise TypeError("Unknown frame kind: {}".format(kind))
        if pivot is None:
            pivot = self.split_at(f, p).pivot
        size = getattr(pivot, kind).shape[1]
        manifold = f.source if kind in ("vertical", "horizontal") \
            else f.target
        return FrameField(
            manifold, size,
            lambda x: getattr(self.split_at(f, x, pivot), kind),
            "{} of {}".format(kind, f.name))

    def riemannian_residual(self, frames: FrameBundle) -> float:
        pushed = frames.pushed_horizontal()
        gram = pushed.T @ frames.target_metric @ pushed
        return float(
            np.max(np.abs(gram - np.eye(frames.rank)), initial=0.0))

    def check_riemannian_map(self,
                             f: MapSpec,
                             samples: typing.Sequence[PointLike],
                             tol: float = None) -> VerificationReport:
        tol = self._session.configuration().exact_tolerance \
            if tol is None else tol
        name = "riemannian_map"
        rank = self.check_constant_rank(f, samples)
        if rank.verdict is Verdict.FAIL:
            self._LOGGER.warning(
                "{} on {} skipped: rank is not constant".format(name, f.name))
            return VerificationReport.vacuous(
                name, tol, rank.samples,
                "gate failed: constant_rank is {}".format(rank.verdict.value))
        points = [GeometryAnalyzer.coordinates(f.source, p) for p in samples]
        residuals = self._session.map_samples(
            lambda x: self.riemannian_residual(self.split_at(f, x)), points)
        accumulator = VerificationReport.Accumulator()
        for x, residual in zip(points, residuals):
            accumulator.add(x, {"isometry": residual})
        report = accumulator.build(name, tol)
        self._LOGGER.info("{} on {}: {}".format(name, f.name,
                                                report.verdict.value))
        return report

    def adjoint_at(self, f: MapSpec, p: PointLike,
                   y: typing.Union[TangentVector, np.ndarray,
                                   typing.Sequence[float]]) -> TangentVector:
        """Solve g1(x, x*) = g2(F_* x, y) for every x."""
        x = GeometryAnalyzer.coordinates(f.source, p)
        _, jacobian, g1, g2 = self._metrics(f, x)
        w = y.array if isinstance(y, TangentVector) else np.asarray(
            y, dtype=float)
        if w.shape != (f.target.dim, ):
            raise ValueError("Target vector has shape {}, expected ({},)".format(
                w.shape, f.target.dim))
        return f.source.vector(x, np.linalg.solve(g1, jacobian.T @ g2 @ w))
