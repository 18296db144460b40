from __future__ import annotations

import logging
import typing

import numpy as np

from rimaps.common.Utils import Utils
from rimaps.geometry.GeometryAnalyzer import GeometryAnalyzer
from rimaps.geometry.GeometryAnalyzer import PointLike
from rimaps.geometry.ManifoldSpec import TangentVector
from rimaps.hermitian.AntiInvarianceVerdict import AntiInvarianceVerdict
from rimaps.maps.FrameBundle import FrameBundle
from rimaps.maps.FrameBundle import PivotRecord
from rimaps.maps.MapSpec import MapSpec
from rimaps.verdicts.VerificationReport import Verdict
from rimaps.verdicts.VerificationReport import VerificationReport

if typing.TYPE_CHECKING:
    from rimaps.core.Session import Session


class HermitianAnalyzer:
    """Position of J(ker F_*) relative to the kernel/horizontal splitting."""
    _LOGGER: logging = logging.getLogger(__name__)

    def __init__(self, session: Session):
        self._session = session

    def _tolerance(self, tol: typing.Union[float, None]) -> float:
        return self._session.configuration().exact_tolerance \
            if tol is None else tol

    def splitting_at(self,
                     f: MapSpec,
                     p: PointLike,
                     pivot: PivotRecord = None) -> HermitianAnalyzer.Splitting:
        if not f.source.has_complex_structure():
            raise GeometryAnalyzer.NoComplexStructureException(f.source.name)
        frames = self._session.maps().split_at(f, p, pivot)
        structure = self._session.geometry().structure_at(f.source, frames.x)
        return HermitianAnalyzer.Splitting(frames, structure)

    def sample_at(self, f: MapSpec, p: PointLike,
                  tol: float = None) -> AntiInvarianceVerdict.Sample:
        tol = self._tolerance(tol)
        splitting = self.splitting_at(f, p)
        frames = splitting.frames
        g1 = frames.source_metric
        rotated = splitting.structure @ frames.vertical
        along_kernel = frames.vertical.T @ g1 @ rotated
        along_horizontal = frames.horizontal.T @ g1 @ rotated
        vertical_component = float(
            np.max(np.linalg.norm(along_kernel, axis=0), initial=0.0))
        horizontal_component = float(
            np.max(np.linalg.norm(along_horizontal, axis=0), initial=0.0))
        anti = vertical_component < tol
        spanned = splitting.spanned_rank(
            self._session.configuration().rank_threshold)
        lagrangian = anti and spanned == frames.rank
        return AntiInvarianceVerdict.Sample(
            anti, horizontal_component < tol, lagrangian,
            frames.rank - spanned, {
                "vertical_component": vertical_component,
                "horizontal_component": horizontal_component,
            })

    def classify_anti_invariant(self,
                                f: MapSpec,
                                samples: typing.Sequence[PointLike],
                                tol: float = None) -> AntiInvarianceVerdict:
        tol = self._tolerance(tol)
        if not f.source.has_complex_structure():
            raise GeometryAnalyzer.NoComplexStructureException(f.source.name)
        points = [GeometryAnalyzer.coordinates(f.source, p) for p in samples]
        per_sample = self._session.map_samples(
            lambda x: self.sample_at(f, x, tol), points)
        verdict = AntiInvarianceVerdict.combine(per_sample, points)
        dims = {s.mu_dim for s in per_sample if s.anti_invariant}
        if len(dims) > 1:
            self._LOGGER.warning(
                "Dimension of mu varies over samples of {}: {}".format(
                    f.name, sorted(dims)))
        self._LOGGER.info("Classified {}: {}".format(f.name, verdict))
        return verdict

    def check_anti_invariant(self,
                             f: MapSpec,
                             samples: typing.Sequence[PointLike],
                             tol: float = None) -> VerificationReport:
        tol = self._tolerance(tol)
        name = "anti_invariant"
        if not f.source.has_complex_structure():
            return VerificationReport.vacuous(
                name, tol, 0, "gate failed: {} declares no complex structure"
                .format(f.source.name))
        verdict = self.classify_anti_invariant(f, samples, tol)
        accumulator = VerificationReport.Accumulator()
        for x, residuals in zip(verdict.points, verdict.residuals):
            accumulator.add(x, {
                "vertical_component": residuals["vertical_component"]
            })
        report = accumulator.build(
            name, tol, {
                "classification": verdict.classification.value,
                "lagrangian": verdict.lagrangian,
                "mu_dim": verdict.mu_dim,
            })
        if report.verdict is Verdict.FAIL:
            report.worst_offender.detail += "; classification {}".format(
                verdict.classification.value)
        return report

    def _require_anti_invariant(self, f: MapSpec,
                                splitting: HermitianAnalyzer.Splitting,
                                tol: float) -> None:
        defect = splitting.kernel_defect()
        if not defect < tol:
            raise HermitianAnalyzer.NotAntiInvariantException(
                "J(ker F_*) of {} has a vertical component {!r} at {}".format(
                    f.name, defect, splitting.frames.x.tolist()))

    def mu_frame(self,
                 f: MapSpec,
                 p: PointLike,
                 tol: float = None) -> typing.List[TangentVector]:
        tol = self._tolerance(tol)
        splitting = self.splitting_at(f, p)
        self._require_anti_invariant(f, splitting, tol)
        mu = splitting.mu(self._session.configuration().rank_threshold)
        x = splitting.frames.x
        return [f.source.vector(x, mu[:, k]) for k in range(mu.shape[1])]

    def bc_decompose(
        self,
        f: MapSpec,
        p: PointLike,
        z: typing.Union[TangentVector, np.ndarray, typing.Sequence[float]],
        tol: float = None
    ) -> typing.Tuple[TangentVector, TangentVector]:
        """Split J Z for horizontal Z into its vertical part B Z and its
        part C Z in mu."""
        tol = self._tolerance(tol)
        splitting = self.splitting_at(f, p)
        self._require_anti_invariant(f, splitting, tol)
        frames = splitting.frames
        w = z.array if isinstance(z, TangentVector) else np.asarray(
            z, dtype=float)
        g1 = frames.source_metric
        leak = Utils.norm(frames.vertical_projector() @ w, g1)
        if not leak < tol * max(1.0, Utils.norm(w, g1)):
            raise HermitianAnalyzer.NotHorizontalException(
                "Vector {} has vertical component {!r}".format(
                    w.tolist(), leak))
        b, c = splitting.bc(w, self._session.configuration().rank_threshold)
        return (f.source.vector(frames.x, b), f.source.vector(frames.x, c))

    class Splitting:
        """Frames of a map together with J at the same source point."""
        frames: FrameBundle
        structure: np.ndarray

        def __init__(self, frames: FrameBundle, structure: np.ndarray):
            self.frames = frames
            self.structure = structure

        def rotated_kernel(self) -> np.ndarray:
            return self.structure @ self.frames.vertical

        def kernel_defect(self) -> float:
            along = self.frames.vertical.T @ self.frames.source_metric @ \
                self.rotated_kernel()
            return float(np.max(np.linalg.norm(along, axis=0), initial=0.0))

        def _horizontal_coefficients(self) -> np.ndarray:
            return self.frames.horizontal.T @ self.frames.source_metric @ \
                self.rotated_kernel()

        def spanned_rank(self, threshold: float) -> int:
            coefficients = self._horizontal_coefficients()
            if 0 in coefficients.shape:
                return 0
            return HermitianAnalyzer.Splitting._count(
                np.linalg.svd(coefficients, compute_uv=False), threshold)

        @staticmethod
        def _count(sigma: np.ndarray, threshold: float) -> int:
            # J is an isometry, so spanning directions have unit size
            if sigma.size == 0:
                return 0
            return int(np.sum(sigma > threshold * max(1.0, float(sigma[0]))))

        def j_kernel(self) -> np.ndarray:
            """Orthonormal frame of J(ker F_*)."""
            frame, _ = Utils.gram_schmidt(self.rotated_kernel(),
                                          self.frames.source_metric)
            return frame

        def mu(self, threshold: float) -> np.ndarray:
            """Orthonormal frame of the complement of J(ker F_*) inside the
            horizontal space."""
            horizontal = self.frames.horizontal
            coefficients = self._horizontal_coefficients()
            r = horizontal.shape[1]
            if r == 0:
                return np.zeros((horizontal.shape[0], 0))
            if coefficients.shape[1] == 0:
                basis = np.eye(r)
            else:
                u, sigma, _ = np.linalg.svd(coefficients, full_matrices=True)
                spanned = HermitianAnalyzer.Splitting._count(sigma, threshold)
                basis = u[:, spanned:]
            frame, _ = Utils.gram_schmidt(
                Utils.normalize_signs(horizontal @ basis),
                self.frames.source_metric)
            return frame

        def bc(self, w: np.ndarray,
               threshold: float) -> typing.Tuple[np.ndarray, np.ndarray]:
            rotated = self.structure @ w
            g1 = self.frames.source_metric
            return (Utils.projector(self.frames.vertical, g1) @ rotated,
                    Utils.projector(self.mu(threshold), g1) @ rotated)

    class NotAntiInvariantException(ValueError):
        pass

    class NotHorizontalException(ValueError):
        pass
