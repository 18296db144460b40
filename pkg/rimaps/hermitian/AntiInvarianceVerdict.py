from __future__ import annotations

import enum
import typing


class Classification(enum.Enum):
    ANTI_INVARIANT = "anti_invariant"
    INVARIANT_KERNEL = "invariant_kernel"
    MIXED = "mixed"


class AntiInvarianceVerdict:
    """How J acts on the kernel of a map, aggregated over samples.

    Per sample two flags are recorded: J(ker) inside the horizontal space
    and J(ker) inside the kernel. The global classification is their
    conjunction over samples, so a single mixed sample makes the map mixed.
    """
    classification: Classification
    lagrangian: bool
    mu_dim: typing.Union[int, None]
    residuals: typing.List[typing.Dict[str, float]]
    points: typing.List[typing.List[float]]

    def __init__(self, classification: Classification, lagrangian: bool,
                 mu_dim: typing.Union[int, None],
                 residuals: typing.List[typing.Dict[str, float]],
                 points: typing.List[typing.List[float]]):
        self.classification = classification
        self.lagrangian = lagrangian
        self.mu_dim = mu_dim
        self.residuals = residuals
        self.points = points

    def __repr__(self) -> str:
        return "AntiInvarianceVerdict({}, lagrangian={}, mu_dim={})".format(
            self.classification.value, self.lagrangian, self.mu_dim)

    @property
    def anti_invariant(self) -> bool:
        return self.classification is Classification.ANTI_INVARIANT

    def max_residual(self, key: str) -> float:
        return max((r[key] for r in self.residuals), default=0.0)

    class Sample:
        """Classification data at a single point."""
        anti_invariant: bool
        invariant_kernel: bool
        lagrangian: bool
        mu_dim: int
        residuals: typing.Dict[str, float]

        def __init__(self, anti_invariant: bool, invariant_kernel: bool,
                     lagrangian: bool, mu_dim: int,
                     residuals: typing.Dict[str, float]):
            self.anti_invariant = anti_invariant
            self.invariant_kernel = invariant_kernel
            self.lagrangian = lagrangian
            self.mu_dim = mu_dim
            self.residuals = residuals

    @staticmethod
    def combine(samples: typing.Sequence[AntiInvarianceVerdict.Sample],
                points: typing.Sequence[typing.Sequence[float]]
                ) -> AntiInvarianceVerdict:
        if all(s.anti_invariant for s in samples):
            classification = Classification.ANTI_INVARIANT
        elif all(s.invariant_kernel for s in samples):
            classification = Classification.INVARIANT_KERNEL
        else:
            classification = Classification.MIXED
        anti = classification is Classification.ANTI_INVARIANT
        lagrangian = anti and all(s.lagrangian for s in samples)
        mu_dim = None
        if anti and samples:
            mu_dim = min(s.mu_dim for s in samples)
        return AntiInvarianceVerdict(classification, lagrangian, mu_dim,
                                     [s.residuals for s in samples],
                                     [[float(c) for c in x] for x in points])
