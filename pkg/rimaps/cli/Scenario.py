from __future__ import annotations

import itertools
import typing

import numpy as np

from rimaps.geometry.ManifoldSpec import ManifoldSpec
from rimaps.maps.MapSpec import MapSpec


class Sampling:
    """How sample points are drawn on the source chart.

    ``grid`` places ``round(count ** (1 / d))`` points per axis (the
    midpoint when that is one), ``uniform`` draws ``count`` points from
    ``numpy.random.default_rng(seed)`` and ``points`` uses the listed
    points as they are.
    """
    GRID = "grid"
    UNIFORM = "uniform"
    POINTS = "points"
    strategies = (GRID, UNIFORM, POINTS)
    strategy: str
    count: int
    seed: int
    region: typing.List[typing.Tuple[float, float]]
    points: typing.List[typing.Tuple[float, ...]]

    def __init__(self,
                 strategy: str = UNIFORM,
                 count: int = 16,
                 seed: int = 0,
                 region: typing.Sequence[typing.Tuple[float, float]] = (),
                 points: typing.Sequence[typing.Sequence[float]] = ()):
        if strategy not in Sampling.strategies:
            raise ValueError("Unknown sampling strategy: {}".format(strategy))
        if count < 1:
            raise ValueError("Sample count must be positive: {}".format(count))
        self.strategy = strategy
        self.count = count
        self.seed = seed
        self.region = [(float(lo), float(hi)) for lo, hi in region]
        self.points = [tuple(float(c) for c in p) for p in points]

    def __repr__(self) -> str:
        return "Sampling({}, count={}, seed={})".format(self.strategy,
                                                       self.count, self.seed)

    def draw(self,
             count: int = None,
             seed: int = None) -> typing.List[np.ndarray]:
        count = self.count if count is None else count
        seed = self.seed if seed is None else seed
        if self.strategy == Sampling.POINTS:
            return [np.array(p) for p in self.points]
        lows = np.array([lo for lo, _ in self.region])
        highs = np.array([hi for _, hi in self.region])
        d = len(self.region)
        if self.strategy == Sampling.GRID:
            n = max(1, int(round(count**(1.0 / d))))
            axes = [
                np.linspace(lo, hi, n) if n > 1 else np.array([(lo + hi) / 2])
                for lo, hi in self.region
            ]
            return [np.array(p) for p in itertools.product(*axes)]
        rng = np.random.default_rng(seed)
        return list(rng.uniform(lows, highs, size=(count, d)))


class Scenario:
    """A parsed and validated scenario file."""
    name: str
    description: str
    manifolds: typing.Dict[str, ManifoldSpec]
    maps: typing.Dict[str, MapSpec]
    target: str
    target_kind: str
    sampling: Sampling
    checks: typing.List[str]
    tolerance: typing.Union[float, None]
    tolerances: typing.Dict[str, float]

    def __init__(self,
                 name: str,
                 manifolds: typing.Dict[str, ManifoldSpec],
                 maps: typing.Dict[str, MapSpec],
                 target: str,
                 target_kind: str,
                 sampling: Sampling,
                 checks: typing.Sequence[str],
                 description: str = "",
                 tolerance: float = None,
                 tolerances: typing.Dict[str, float] = None):
        self.name = name
        self.description = description
        self.manifolds = dict(manifolds)
        self.maps = dict(maps)
        self.target = target
        self.target_kind = target_kind
        self.sampling = sampling
        self.checks = list(checks)
        self.tolerance = tolerance
        self.tolerances = dict(tolerances or {})

    def __repr__(self) -> str:
        return "Scenario({}, {} {}, checks={})".format(self.name,
                                                       self.target_kind,
                                                       self.target,
                                                       len(self.checks))

    def subject(self) -> typing.Union[MapSpec, ManifoldSpec]:
        if self.target_kind == "map":
            return self.maps[self.target]
        return self.manifolds[self.target]

    def sample_manifold(self) -> ManifoldSpec:
        subject = self.subject()
        return subject.source if isinstance(subject, MapSpec) else subject

    def tolerance_for(self, check: str,
                      override: float = None) -> typing.Union[float, None]:
        """Per-check value, else ``override``, else the scenario value;
        None leaves the check's own default."""
        if check in self.tolerances:
            return self.tolerances[check]
        if override is not None:
            return override
        return self.tolerance
