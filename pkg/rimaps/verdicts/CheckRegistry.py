from __future__ import annotations

import typing

from rimaps.verdicts.VerificationReport import VerificationReport

if typing.TYPE_CHECKING:
    from rimaps.core.Session import Session
    from rimaps.geometry.ManifoldSpec import ManifoldSpec
    from rimaps.maps.MapSpec import MapSpec

Runner = typing.Callable[..., VerificationReport]


class CheckRegistry:
    """Check names accepted by scenarios, in report order, with the
    operation each one runs and its default tolerance class."""

    class Entry:
        name: str
        tolerance: str
        manifold_only: bool
        _runner: Runner

        def __init__(self,
                     name: str,
                     tolerance: str,
                     runner: Runner,
                     manifold_only: bool = False):
            self.name = name
            self.tolerance = tolerance
            self.manifold_only = manifold_only
            self._runner = runner

        def default_tolerance(self, session: Session) -> float:
            conf = session.configuration()
            if self.tolerance == "exact":
                return conf.exact_tolerance
            if self.tolerance == "fd":
                return conf.fd_tolerance
            return float(self.tolerance)

        def run(self, session: Session, target: typing.Union[MapSpec,
                                                             ManifoldSpec],
                samples: typing.Sequence, tol: float) -> VerificationReport:
            return self._runner(session, target, samples, tol)

    _entries: typing.List[CheckRegistry.Entry] = [
        Entry("almost_hermitian", "exact",
              lambda s, t, p, tol: s.geometry().check_almost_hermitian(
                  t, p, tol), True),
        Entry("kahler", "exact",
              lambda s, t, p, tol: s.geometry().check_kahler(t, p, tol), True),
        Entry("constant_rank", "0.0",
              lambda s, f, p, tol: s.maps().check_constant_rank(f, p)),
        Entry("riemannian_map", "exact",
              lambda s, f, p, tol: s.maps().check_riemannian_map(f, p, tol)),
        Entry("anti_invariant", "exact",
              lambda s, f, p, tol: s.hermitian().check_anti_invariant(
                  f, p, tol)),
        Entry("dimension_counts", "0.5",
              lambda s, f, p, tol: s.verdicts().check_dimension_counts(f, p)),
        Entry("totally_geodesic_map", "exact",
              lambda s, f, p, tol: s.fundforms().check_totally_geodesic_map(
                  f, p, tol)),
        Entry("umbilical_fibers", "fd",
              lambda s, f, p, tol: s.fundforms().check_umbilical_fibers(
                  f, p, tol)),
        Entry("range_lemma", "fd",
              lambda s, f, p, tol: s.verdicts().check_range_lemma(f, p, tol)),
        Entry("pluriharmonic", "exact",
              lambda s, f, p, tol: s.verdicts().check_pluriharmonic(
                  f, p, tol)),
        Entry("vertical_foliation", "fd",
              lambda s, f, p, tol: s.verdicts().check_vertical_foliation(
                  f, p, tol)),
        Entry("horizontal_foliation", "fd",
              lambda s, f, p, tol: s.verdicts().check_horizontal_foliation(
                  f, p, tol)),
        Entry("local_product", "fd",
              lambda s, f, p, tol: s.verdicts().check_local_product(
                  f, p, tol)),
        Entry("geodesic_criterion", "fd",
              lambda s, f, p, tol: s.verdicts().check_geodesic_criterion(
                  f, p, tol)),
        Entry("umbilical_lagrangian", "fd",
              lambda s, f, p, tol: s.verdicts().check_umbilical_lagrangian(
                  f, p, tol)),
        Entry("pluriharmonic_rigidity", "exact",
              lambda s, f, p, tol: s.verdicts().check_pluriharmonic_rigidity(
                  f, p, tol)),
    ]

    @staticmethod
    def names() -> typing.List[str]:
        return [entry.name for entry in CheckRegistry._entries]

    @staticmethod
    def manifold_names() -> typing.List[str]:
        return [
            entry.name for entry in CheckRegistry._entries
            if entry.manifold_only
        ]

    @staticmethod
    def get(name: str) -> CheckRegistry.Entry:
        for entry in CheckRegistry._entries:
            if entry.name == name:
                return entry
        raise CheckRegistry.UnknownCheckException(name)

    @staticmethod
    def run(session: Session, name: str, target: typing.Union[MapSpec,
                                                              ManifoldSpec],
            samples: typing.Sequence,
            tol: float = None) -> VerificationReport:
        """Run one named check. Manifold checks on a map run on its
        source."""
        entry = CheckRegistry.get(name)
        if tol is None:
            tol = entry.default_tolerance(session)
        if entry.manifold_only and hasattr(target, "source"):
            target = target.source
        return entry.run(session, target, samples, tol)

    class UnknownCheckException(KeyError):
        def __init__(self, name: str):
            super().__init__("Unknown check: {}".format(name))
            self.name = name
