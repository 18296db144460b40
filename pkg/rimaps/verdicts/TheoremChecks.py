from __future__ import annotations

import logging
import math
import typing

import numpy as np

from rimaps.common.Utils import Utils
from rimaps.verdicts.VerificationReport import Verdict
from rimaps.verdicts.VerificationReport import VerificationReport

if typing.TYPE_CHECKING:
    from rimaps.core.Session import Session
    from rimaps.geometry.GeometryAnalyzer import PointLike
    from rimaps.maps.FrameBundle import FrameBundle
    from rimaps.maps.MapSpec import MapSpec

Samples = typing.Sequence["PointLike"]


class TheoremChecks:
    """Numerical checks of the structure results for anti-invariant
    Riemannian maps from Kahler manifolds.

    Every "if and only if" is measured as two independent sides. Both
    sides holding gives ``pass``, both failing gives ``fail`` and a
    disagreement gives ``inconsistent``. Hypotheses that do not hold on
    the sampled map give ``vacuous-pass`` naming the failed gate.
    """
    _LOGGER: logging = logging.getLogger(__name__)

    def __init__(self, session: Session):
        self._session = session

    def _exact(self, tol: typing.Union[float, None]) -> float:
        return self._session.configuration().exact_tolerance \
            if tol is None else tol

    def _fd(self, tol: typing.Union[float, None]) -> float:
        return self._session.configuration().fd_tolerance \
            if tol is None else tol

    def _points(self, f: MapSpec, samples: Samples) -> typing.List[np.ndarray]:
        geometry = self._session.geometry()
        return [geometry.coordinates(f.source, p) for p in samples]

    def _gate(self,
              f: MapSpec,
              samples: Samples,
              lagrangian: bool = False,
              kahler: bool = True) -> typing.Union[str, None]:
        """Name of the first failed hypothesis, or None."""
        if not f.source.has_complex_structure():
            return "{} declares no complex structure".format(f.source.name)
        if kahler:
            report = self._session.geometry().check_kahler(f.source, samples)
            if report.verdict is not Verdict.PASS:
                return "kahler is {}".format(report.verdict.value)
        report = self._session.maps().check_riemannian_map(f, samples)
        if report.verdict is not Verdict.PASS:
            return "riemannian_map is {}".format(report.verdict.value)
        verdict = self._session.hermitian().classify_anti_invariant(f, samples)
        if not verdict.anti_invariant:
            return "map is not anti-invariant (classification {})".format(
                verdict.classification.value)
        if lagrangian and not verdict.lagrangian:
            return "map is not Lagrangian (dim mu = {})".format(
                verdict.mu_dim)
        return None

    def _vacuous(self, name: str, f: MapSpec, tol: float, samples: int,
                 gate: str) -> VerificationReport:
        self._LOGGER.warning("{} on {} skipped: {}".format(name, f.name, gate))
        return VerificationReport.vacuous(name, tol, samples,
                                          "gate failed: {}".format(gate))

    def _biconditional(self, name: str, f: MapSpec, tol: float,
                       accumulator: VerificationReport.Accumulator,
                       condition: typing.Sequence[str],
                       conclusion: typing.Sequence[str],
                       details: typing.Dict[str, typing.Any] = None,
                       trouble: str = None) -> VerificationReport:
        report = accumulator.build(name, tol)
        holds = all(report.residuals.get(k, 0.0) < tol for k in condition)
        concluded = all(report.residuals.get(k, 0.0) < tol for k in conclusion)
        details = dict(details or {})
        details["condition"] = "holds" if holds else "fails"
        details["conclusion"] = "holds" if concluded else "fails"
        offender = report.worst_offender
        if trouble is not None:
            verdict = Verdict.INCONSISTENT
            offender = VerificationReport.WorstOffender(
                offender.point, trouble)
        elif holds and concluded:
            verdict = Verdict.PASS
        elif not holds and not concluded:
            verdict = Verdict.FAIL
        else:
            verdict = Verdict.INCONSISTENT
            offender = VerificationReport.WorstOffender(
                offender.point,
                "sides disagree: condition {}, conclusion {}; {}".format(
                    details["condition"], details["conclusion"],
                    offender.detail))
        if verdict is Verdict.INCONSISTENT:
            self._LOGGER.error("{} on {} is inconsistent: {}".format(
                name, f.name, offender.detail))
        else:
            self._LOGGER.info("{} on {}: {}".format(name, f.name,
                                                    verdict.value))
        return VerificationReport(name, verdict, report.residuals, tol,
                                  report.samples, offender, details)

    # Pluriharmonicity and the range lemma

    def pluriharmonic_residual(self, f: MapSpec, x: np.ndarray) -> float:
        """Largest |(nabla F_*)(u, u) + (nabla F_*)(Ju, Ju)| over the
        polarization set."""
        sff = self._session.fundforms().map_sff_at(f, x)
        structure = self._session.geometry().structure_at(f.source, x)
        return max((Utils.norm(
            sff.quadratic(u) + sff.quadratic(structure @ u), sff.target_metric)
                    for u in Utils.polarization_set(f.source.dim)),
                   default=0.0)

    def check_pluriharmonic(self,
                            f: MapSpec,
                            samples: Samples,
                            tol: float = None) -> VerificationReport:
        tol = self._exact(tol)
        name = "pluriharmonic"
        points = self._points(f, samples)
        if not f.source.has_complex_structure():
            return self._vacuous(
                name, f, tol, len(points),
                "{} declares no complex structure".format(f.source.name))
        residuals = self._session.map_samples(
            lambda x: self.pluriharmonic_residual(f, x), points)
        accumulator = VerificationReport.Accumulator()
        for x, residual in zip(points, residuals):
            accumulator.add(x, {"pluriharmonic": residual})
        report = accumulator.build(name, tol)
        self._LOGGER.info("{} on {}: {}".format(name, f.name,
                                                report.verdict.value))
        return report

    def range_lemma_residuals(self, f: MapSpec,
                              x: np.ndarray) -> typing.Dict[str, float]:
        """Range part of (nabla F_*) on horizontal pairs and range
        complement part on vertical pairs."""
        frames = self._session.maps().split_at(f, x)
        sff = self._session.fundforms().map_sff_at(f, x)
        g2 = frames.target_metric
        to_range = frames.range_projector()
        to_normal = frames.normal_projector()
        horizontal = [
            Utils.norm(to_range @ sff(frames.horizontal[:, i],
                                      frames.horizontal[:, j]), g2)
            for i in range(frames.rank) for j in range(i, frames.rank)
        ]
        k = frames.vertical.shape[1]
        vertical = [
            Utils.norm(to_normal @ sff(frames.vertical[:, i],
                                       frames.vertical[:, j]), g2)
            for i in range(k) for j in range(i, k)
        ]
        return {
            "horizontal_range_part": max(horizontal, default=0.0),
            "vertical_normal_part": max(vertical, default=0.0),
        }

    def check_range_lemma(self,
                          f: MapSpec,
                          samples: Samples,
                          tol: float = None) -> VerificationReport:
        tol = self._fd(tol)
        name = "range_lemma"
        points = self._points(f, samples)
        report = self._session.maps().check_riemannian_map(f, samples)
        if report.verdict is not Verdict.PASS:
            return self._vacuous(
                name, f, tol, len(points),
                "riemannian_map is {}".format(report.verdict.value))
        residuals = self._session.map_samples(
            lambda x: self.range_lemma_residuals(f, x), points)
        accumulator = VerificationReport.Accumulator()
        for x, values in zip(points, residuals):
            accumulator.add(x, values)
        report = accumulator.build(name, tol)
        self._LOGGER.info("{} on {}: {}".format(name, f.name,
                                                report.verdict.value))
        return report

    # Dimension counts

    def check_dimension_counts(self, f: MapSpec,
                               samples: Samples) -> VerificationReport:
        """Integer comparisons: dim mu = m - 2 dim ker, Lagrangian iff
        m = 2 rank, and anti-invariance of proper maps from surfaces.

        Residuals are 0 or counts, so the tolerance is fixed at 0.5.
        """
        tol = 0.5
        name = "dimension_counts"
        points = self._points(f, samples)
        if not f.source.has_complex_structure():
            return self._vacuous(
                name, f, tol, len(points),
                "{} declares no complex structure".format(f.source.name))
        m = f.source.dim
        hermitian = self._session.hermitian()
        maps = self._session.maps()
        per_sample = self._session.map_samples(
            lambda x: (maps.jacobian_at(f, x).rank, hermitian.sample_at(f, x)),
            points)
        surface = [m == 2 and 0 < rank < m for rank, _ in per_sample]
        if not all(sample.anti_invariant or forced
                   for (_, sample), forced in zip(per_sample, surface)):
            return self._vacuous(name, f, tol, len(points),
                                 "map is not anti-invariant")
        accumulator = VerificationReport.Accumulator()
        dims = set()
        for x, (rank, sample), forced in zip(points, per_sample, surface):
            kernel = m - rank
            residuals = {
                "forced_anti_invariance":
                float(forced and not sample.anti_invariant)
            }
            if sample.anti_invariant:
                dims.add(sample.mu_dim)
                residuals["mu_dimension"] = float(
                    abs(sample.mu_dim - (m - 2 * kernel)))
                residuals["lagrangian_criterion"] = float(
                    sample.lagrangian != (m == 2 * rank))
            accumulator.add(
                x, residuals, "rank {}, dim ker {}, dim mu {}".format(
                    rank, kernel, sample.mu_dim))
        report = accumulator.build(name, tol, {"mu_dims": sorted(dims)})
        self._LOGGER.info("{} on {}: {}".format(name, f.name,
                                                report.verdict.value))
        return report

    # Foliations

    def vertical_foliation_residuals(self, f: MapSpec,
                                     x: np.ndarray) -> typing.Dict[str, float]:
        forms = self._session.fundforms()
        splitting = self._session.hermitian().splitting_at(f, x)
        frames = splitting.frames
        sff = forms.map_sff_at(f, x)
        g2 = frames.target_metric
        structure = splitting.structure
        threshold = self._session.configuration().rank_threshold
        balance = 0.0
        for z in frames.horizontal.T:
            b, c = splitting.bc(z, threshold)
            pushed_c = frames.push(c)
            for u in frames.vertical.T:
                sff_ub = sff(u, b)
                for w in frames.vertical.T:
                    jw = structure @ w
                    balance = max(
                        balance,
                        abs(
                            Utils.inner(sff_ub, frames.push(jw), g2) -
                            Utils.inner(sff(jw, u), pushed_c, g2)))
        fibers = forms.fiber_geometry_at(f, x)
        return {
            "sff_balance": balance,
            "vertical_sff": fibers.b_norm(),
            "vertical_integrability": fibers.i_norm(),
        }

    def check_vertical_foliation(self,
                                 f: MapSpec,
                                 samples: Samples,
                                 tol: float = None) -> VerificationReport:
        """ker F_* defines a totally geodesic foliation iff
        g2((nabla F_*)(X, BZ), F_*JY) = g2((nabla F_*)(JY, X), F_*CZ)."""
        tol = self._fd(tol)
        name = "vertical_foliation"
        points = self._points(f, samples)
        gate = self._gate(f, samples)
        if gate is not None:
            return self._vacuous(name, f, tol, len(points), gate)
        residuals = self._session.map_samples(
            lambda x: self.vertical_foliation_residuals(f, x), points)
        accumulator = VerificationReport.Accumulator()
        for x, values in zip(points, residuals):
            accumulator.add(x, values)
        return self._biconditional(
            name, f, tol, accumulator, ["sff_balance"],
            ["vertical_sff", "vertical_integrability"])

    def _pushed_rotated_vertical(self, f: MapSpec, frames: FrameBundle,
                                 index: int) -> typing.Callable:
        maps = self._session.maps()
        geometry = self._session.geometry()
        pivot = frames.pivot

        def field(x: np.ndarray) -> np.ndarray:
            moved = maps.split_at(f, x, pivot)
            return moved.push(
                geometry.structure_at(f.source, x) @ moved.vertical[:, index])

        return field

    def horizontal_foliation_residuals(
            self, f: MapSpec, x: np.ndarray) -> typing.Dict[str, float]:
        forms = self._session.fundforms()
        maps = self._session.maps()
        splitting = self._session.hermitian().splitting_at(f, x)
        frames = splitting.frames
        sff = forms.map_sff_at(f, x)
        g2 = frames.target_metric
        structure = splitting.structure
        threshold = self._session.configuration().rank_threshold
        decomposed = [splitting.bc(z, threshold) for z in frames.horizontal.T]
        to_range = frames.range_projector()
        balance = 0.0
        lemma = 0.0
        for a in range(frames.vertical.shape[1]):
            jx = structure @ frames.vertical[:, a]
            pushed_jx = frames.push(jx)
            field = self._pushed_rotated_vertical(f, frames, a)
            for z1 in frames.horizontal.T:
                lemma = max(lemma, Utils.norm(to_range @ sff(z1, jx), g2))
                derivative = forms.pullback_derivative(f, x, field, z1)
                for b, c in decomposed:
                    balance = max(
                        balance,
                        abs(
                            Utils.inner(sff(z1, b), pushed_jx, g2) +
                            Utils.inner(derivative, frames.push(c), g2)))
        horizontal = forms.distribution_geometry(
            f.source, maps.frame_field(f, x, "horizontal", frames.pivot), x)
        return {
            "derivative_balance": balance,
            "horizontal_sff": horizontal.b_norm(),
            "horizontal_integrability": horizontal.i_norm(),
            "range_lemma": lemma,
        }

    def check_horizontal_foliation(self,
                                   f: MapSpec,
                                   samples: Samples,
                                   tol: float = None) -> VerificationReport:
        """(ker F_*)^perp defines a totally geodesic foliation iff
        g2((nabla F_*)(Z1, BZ2), F_*JX) = -g2(nabla^F_Z1 F_*JX, F_*CZ2).

        The equivalence drops the range part of (nabla F_*)(Z1, JX); when
        that part is measurably nonzero the verdict is ``inconsistent``.
        """
        tol = self._fd(tol)
        name = "horizontal_foliation"
        points = self._points(f, samples)
        gate = self._gate(f, samples)
        if gate is not None:
            return self._vacuous(name, f, tol, len(points), gate)
        residuals = self._session.map_samples(
            lambda x: self.horizontal_foliation_residuals(f, x), points)
        accumulator = VerificationReport.Accumulator()
        for x, values in zip(points, residuals):
            accumulator.add(x, values)
        lemma = max(values["range_lemma"] for values in residuals)
        trouble = None
        if not lemma < tol:
            trouble = "range part of (nabla F_*)(Z1, JX) is {!r}".format(lemma)
        return self._biconditional(
            name, f, tol, accumulator, ["derivative_balance"],
            ["horizontal_sff", "horizontal_integrability"],
            trouble=trouble)

    def check_local_product(self,
                            f: MapSpec,
                            samples: Samples,
                            tol: float = None) -> VerificationReport:
        """Both foliations totally geodesic, so the source is locally a
        Riemannian product."""
        tol = self._fd(tol)
        name = "local_product"
        parts = [
            self.check_vertical_foliation(f, samples, tol),
            self.check_horizontal_foliation(f, samples, tol),
        ]
        residuals = {}
        for part in parts:
            residuals.update(part.residuals)
        details = {part.name: part.verdict.value for part in parts}
        vacuous = [p for p in parts if p.verdict is Verdict.VACUOUS_PASS]
        if vacuous:
            return VerificationReport(name, Verdict.VACUOUS_PASS, {}, tol,
                                      vacuous[0].samples,
                                      vacuous[0].worst_offender, details)
        worst = max(parts, key=lambda p: p.max_residual)
        if any(p.verdict is Verdict.INCONSISTENT for p in parts):
            verdict = Verdict.INCONSISTENT
            worst = next(p for p in parts if p.verdict is Verdict.INCONSISTENT)
        elif all(p.verdict is Verdict.PASS for p in parts):
            verdict = Verdict.PASS
        else:
            verdict = Verdict.FAIL
        self._LOGGER.info("{} on {}: {}".format(name, f.name, verdict.value))
        return VerificationReport(name, verdict, residuals, tol,
                                  parts[0].samples, worst.worst_offender,
                                  details)

    # Totally geodesic criterion

    @staticmethod
    def _adjoint(frames: FrameBundle) -> np.ndarray:
        return np.linalg.solve(frames.source_metric,
                               frames.jacobian.T @ frames.target_metric)

    def adjoint_shape_defect(self, f: MapSpec, p: PointLike,
                             u: np.ndarray, v: np.ndarray) -> float:
        """Norm of the part of *F_*(A_V F_*(J U)) outside mu, for one
        vertical U and one normal V."""
        x = self._points(f, [p])[0]
        splitting = self._session.hermitian().splitting_at(f, x)
        frames = splitting.frames
        shape = self._session.fundforms().shape_operator_at(f, x, v,
                                                            frames=frames)
        mu = splitting.mu(self._session.configuration().rank_threshold)
        outside = np.eye(frames.source_dim) - Utils.projector(
            mu, frames.source_metric)
        image = self._adjoint(frames) @ shape.apply(
            frames.push(splitting.structure @ np.asarray(u, dtype=float)))
        return Utils.norm(outside @ image, frames.source_metric)

    def geodesic_criterion_residuals(
            self, f: MapSpec, x: np.ndarray) -> typing.Dict[str, float]:
        forms = self._session.fundforms()
        maps = self._session.maps()
        geometry = self._session.geometry()
        splitting = self._session.hermitian().splitting_at(f, x)
        frames = splitting.frames
        sff = forms.map_sff_at(f, x)
        g1 = frames.source_metric
        g2 = frames.target_metric
        structure = splitting.structure
        threshold = self._session.configuration().rank_threshold
        m = frames.source_dim
        adjoint = self._adjoint(frames)
        mu = splitting.mu(threshold)
        outside_mu = np.eye(m) - Utils.projector(mu, g1)
        outside_j_kernel = np.eye(m) - Utils.projector(splitting.j_kernel(),
                                                       g1)
        shapes = [
            forms.shape_operator_at(f, x, v, frames=frames)
            for v in frames.normal.T
        ]
        # Hilbert-Schmidt aggregation over orthonormal frames
        in_mu = 0.0
        for u in frames.vertical.T:
            pushed = frames.push(structure @ u)
            for shape in shapes:
                in_mu += Utils.norm(
                    outside_mu @ adjoint @ shape.apply(pushed), g1)**2
        in_j_kernel = 0.0
        for z in mu.T:
            pushed = frames.push(z)
            for shape in shapes:
                in_j_kernel += Utils.norm(
                    outside_j_kernel @ adjoint @ shape.apply(pushed), g1)**2
        decomposed = [splitting.bc(z, threshold) for z in frames.horizontal.T]
        sff_balance = 0.0
        for u in frames.vertical.T:
            for w in frames.vertical.T:
                jw = structure @ w
                for b, c in decomposed:
                    sff_balance = max(
                        sff_balance,
                        abs(
                            Utils.inner(frames.push(jw), sff(u, b), g2) -
                            Utils.inner(sff(u, jw), frames.push(c), g2)))
        derivative_balance = 0.0
        pivot = frames.pivot
        for i, (b, c) in enumerate(decomposed):

            def rotated_horizontal(y: np.ndarray, index: int = i) -> np.ndarray:
                moved = maps.split_at(f, y, pivot)
                return moved.vertical_projector() @ geometry.structure_at(
                    f.source, y) @ moved.horizontal[:, index]

            pushed_c = frames.push(c)
            for u in frames.vertical.T:
                nabla = forms.covariant_derivative(f.source, x,
                                                   rotated_horizontal, u)
                for b_bar, c_bar in decomposed:
                    left = Utils.inner(nabla, b_bar, g1)
                    right = (Utils.inner(sff(u, b) + sff(u, c),
                                         frames.push(c_bar), g2) -
                             Utils.inner(pushed_c, sff(u, b_bar), g2))
                    derivative_balance = max(derivative_balance,
                                             abs(left - right))
        return {
            "adjoint_shape_in_mu": math.sqrt(in_mu),
            "adjoint_shape_in_j_kernel": math.sqrt(in_j_kernel),
            "vertical_sff_balance": sff_balance,
            "vertical_derivative_balance": derivative_balance,
            "second_fundamental_form": sff.max_norm(),
        }

    def check_geodesic_criterion(self,
                                 f: MapSpec,
                                 samples: Samples,
                                 tol: float = None) -> VerificationReport:
        """F is totally geodesic iff *F_*(A_V F_*JX) lies in mu,
        *F_*(A_V F_*Z1) lies in J(ker F_*) and the two balance identities
        for vertical X, Y and horizontal Z, Z' hold."""
        tol = self._fd(tol)
        name = "geodesic_criterion"
        points = self._points(f, samples)
        gate = self._gate(f, samples)
        if gate is not None:
            return self._vacuous(name, f, tol, len(points), gate)
        residuals = self._session.map_samples(
            lambda x: self.geodesic_criterion_residuals(f, x), points)
        accumulator = VerificationReport.Accumulator()
        for x, values in zip(points, residuals):
            accumulator.add(x, values)
        return self._biconditional(name, f, tol, accumulator, [
            "adjoint_shape_in_mu", "adjoint_shape_in_j_kernel",
            "vertical_sff_balance", "vertical_derivative_balance"
        ], ["second_fundamental_form"])

    # Umbilical fibers and pluriharmonicity

    def check_umbilical_lagrangian(self,
                                   f: MapSpec,
                                   samples: Samples,
                                   tol: float = None) -> VerificationReport:
        """Totally umbilical fibers of a Lagrangian map with dim ker > 1 are
        totally geodesic."""
        tol = self._fd(tol)
        name = "umbilical_lagrangian"
        points = self._points(f, samples)
        gate = self._gate(f, samples, lagrangian=True)
        if gate is None and points:
            kernel = self._session.maps().split_at(f, points[0]).vertical
            if kernel.shape[1] <= 1:
                gate = "dim ker F_* = {} is not greater than 1".format(
                    kernel.shape[1])
        if gate is not None:
            return self._vacuous(name, f, tol, len(points), gate)
        fibers = self._session.fundforms().check_umbilical_fibers(
            f, samples, tol)
        if fibers.verdict is not Verdict.PASS:
            return self._vacuous(
                name, f, tol, len(points),
                "umbilical_fibers is {}".format(fibers.verdict.value))
        residuals = {
            "umbilical": fibers.residual("umbilical"),
            "mean_curvature": fibers.details["mean_curvature_norm"],
            "fiber_sff": fibers.details["fiber_sff_norm"],
        }
        if residuals["mean_curvature"] < tol and residuals["fiber_sff"] < tol:
            verdict = Verdict.PASS
            offender = fibers.worst_offender
            self._LOGGER.info("{} on {}: pass".format(name, f.name))
        else:
            verdict = Verdict.INCONSISTENT
            offender = VerificationReport.WorstOffender(
                fibers.worst_offender.point,
                "umbilical fibers with |H| = {!r}, |h| = {!r}".format(
                    residuals["mean_curvature"], residuals["fiber_sff"]))
            self._LOGGER.error("{} on {} is inconsistent: {}".format(
                name, f.name, offender.detail))
        return VerificationReport(name, verdict, residuals, tol,
                                  fibers.samples, offender)

    def check_pluriharmonic_rigidity(self,
                                     f: MapSpec,
                                     samples: Samples,
                                     tol: float = None) -> VerificationReport:
        """A pluriharmonic Lagrangian map is totally geodesic; checked
        together with its contrapositive."""
        tol = self._exact(tol)
        name = "pluriharmonic_rigidity"
        points = self._points(f, samples)
        gate = self._gate(f, samples, lagrangian=True)
        if gate is not None:
            return self._vacuous(name, f, tol, len(points), gate)
        pluriharmonic = self.check_pluriharmonic(f, samples, tol)
        geodesic = self._session.fundforms().check_totally_geodesic_map(
            f, samples, tol)
        details = {
            "pluriharmonic": pluriharmonic.verdict.value,
            "pluriharmonic_residual": pluriharmonic.max_residual,
            "totally_geodesic_map": geodesic.verdict.value,
            "second_fundamental_form": geodesic.max_residual,
        }
        violated = pluriharmonic.passed and not geodesic.passed
        if violated:
            self._LOGGER.error(
                "{} on {} is inconsistent: pluriharmonic but not totally "
                "geodesic".format(name, f.name))
            return VerificationReport(
                name, Verdict.INCONSISTENT, {"implication": 1.0}, tol,
                len(points),
                VerificationReport.WorstOffender(
                    geodesic.worst_offender.point,
                    "pluriharmonic but not totally geodesic; {}".format(
                        geodesic.worst_offender.detail)), details)
        self._LOGGER.info("{} on {}: pass".format(name, f.name))
        return VerificationReport(name, Verdict.PASS, {"implication": 0.0},
                                  tol, len(points), None, details)
