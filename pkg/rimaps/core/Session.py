from __future__ import annotations

import concurrent.futures
import logging
import typing

from rimaps.fundforms.FundamentalForms import FundamentalForms
from rimaps.geometry.GeometryAnalyzer import GeometryAnalyzer
from rimaps.hermitian.HermitianAnalyzer import HermitianAnalyzer
from rimaps.maps.MapAnalyzer import MapAnalyzer
from rimaps.verdicts.TheoremChecks import TheoremChecks
from rimaps.Version import Version

T = typing.TypeVar("T")
R = typing.TypeVar("R")


class Session:
    """Entry point owning the configuration, the analyzers and the worker
    pool used for sample-level parallelism."""
    _LOGGER: logging = logging.getLogger(__name__)
    _executor: typing.Union[concurrent.futures.ThreadPoolExecutor,
                            None] = None
    _fundforms: typing.Union[FundamentalForms, None] = None
    _geometry: typing.Union[GeometryAnalyzer, None] = None
    _hermitian: typing.Union[HermitianAnalyzer, None] = None
    _maps: typing.Union[MapAnalyzer, None] = None
    _verdicts: typing.Union[TheoremChecks, None] = None
    _closed: bool = False

    def __init__(self, conf: Session.Configuration):
        self._conf = conf
        if conf.threads > 1:
            self._executor = concurrent.futures.ThreadPoolExecutor(
                max_workers=conf.threads, thread_name_prefix="rimaps-worker")
        self._LOGGER.info("Created new session ({}), threads: {}".format(
            Version.system_info_string(), conf.threads))

    def __enter__(self) -> Session:
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()

    def configuration(self) -> Session.Configuration:
        return self._conf

    def geometry(self) -> GeometryAnalyzer:
        if self._geometry is None:
            self._geometry = GeometryAnalyzer(self)
        return self._geometry

    def maps(self) -> MapAnalyzer:
        if self._maps is None:
            self._maps = MapAnalyzer(self)
        return self._maps

    def hermitian(self) -> HermitianAnalyzer:
        if self._hermitian is None:
            self._hermitian = HermitianAnalyzer(self)
        return self._hermitian

    def fundforms(self) -> FundamentalForms:
        if self._fundforms is None:
            self._fundforms = FundamentalForms(self)
        return self._fundforms

    def verdicts(self) -> TheoremChecks:
        if self._verdicts is None:
            self._verdicts = TheoremChecks(self)
        return self._verdicts

    def map_samples(self, function: typing.Callable[[T], R],
                    samples: typing.Sequence[T]) -> typing.List[R]:
        """Apply ``function`` to every sample, keeping the sample order."""
        if self._closed:
            raise RuntimeError("Session is closed")
        if self._executor is None or len(samples) < 2:
            return [function(sample) for sample in samples]
        return list(self._executor.map(function, samples))

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None
        self._closed = True
        self._LOGGER.info("Closed session.")

    class Configuration:
        # Rank
        rank_threshold: float

        # Tolerances
        exact_tolerance: float
        fd_tolerance: float

        # Numerics
        fd_step: float
        pd_threshold: float
        breakdown_threshold: float

        # Sampling
        threads: int
        seed: typing.Union[int, None]
        samples: typing.Union[int, None]

        def __init__(
            self,
            rank_threshold: float,
            exact_tolerance: float,
            fd_tolerance: float,
            fd_step: float,
            pd_threshold: float,
            breakdown_threshold: float,
            threads: int,
            seed: typing.Union[int, None],
            samples: typing.Union[int, None],
        ):
            self.rank_threshold = rank_threshold
            self.exact_tolerance = exact_tolerance
            self.fd_tolerance = fd_tolerance
            self.fd_step = fd_step
            self.pd_threshold = pd_threshold
            self.breakdown_threshold = breakdown_threshold
            self.threads = threads
            self.seed = seed
            self.samples = samples

        class Builder:
            # Rank
            rank_threshold: float = 1e-8

            # Tolerances
            exact_tolerance: float = 1e-9
            fd_tolerance: float = 1e-6

            # Numerics
            fd_step: float = 1e-5
            pd_threshold: float = 1e-10
            breakdown_threshold: float = 1e-8

            # Sampling
            threads: int = 1
            seed: typing.Union[int, None] = None
            samples: typing.Union[int, None] = None

            def set_rank_threshold(
                    self,
                    rank_threshold: float) -> Session.Configuration.Builder:
                if not 0 < rank_threshold < 1:
                    raise TypeError(
                        "Rank threshold must lie in (0, 1): {}".format(
                            rank_threshold))
                self.rank_threshold = rank_threshold
                return self

            def set_exact_tolerance(
                    self,
                    exact_tolerance: float) -> Session.Configuration.Builder:
                self.exact_tolerance = exact_tolerance
                return self

            def set_fd_tolerance(
                    self, fd_tolerance: float) -> Session.Configuration.Builder:
                self.fd_tolerance = fd_tolerance
                return self

            def set_fd_step(self,
                            fd_step: float) -> Session.Configuration.Builder:
                if fd_step <= 0:
                    raise TypeError("Step must be positive: {}".format(fd_step))
                self.fd_step = fd_step
                return self

            def set_pd_threshold(
                    self, pd_threshold: float) -> Session.Configuration.Builder:
                self.pd_threshold = pd_threshold
                return self

            def set_breakdown_threshold(
                self, breakdown_threshold: float
            ) -> Session.Configuration.Builder:
                self.breakdown_threshold = breakdown_threshold
                return self

            def set_threads(self,
                            threads: int) -> Session.Configuration.Builder:
                if threads < 1:
                    raise TypeError(
                        "Thread count must be positive: {}".format(threads))
                self.threads = threads
                return self

            def set_seed(
                self, seed: typing.Union[int, None]
            ) -> Session.Configuration.Builder:
                self.seed = seed
                return self

            def set_samples(
                self, samples: typing.Union[int, None]
            ) -> Session.Configuration.Builder:
                if samples is not None and samples < 1:
                    raise TypeError(
                        "Sample count must be positive: {}".format(samples))
                self.samples = samples
                return self

            def build(self) -> Session.Configuration:
                return Session.Configuration(
                    self.rank_threshold,
                    self.exact_tolerance,
                    self.fd_tolerance,
                    self.fd_step,
                    self.pd_threshold,
                    self.breakdown_threshold,
                    self.threads,
                    self.seed,
                    self.samples,
                )

    class Builder:
        conf = None

        def __init__(self, conf: Session.Configuration = None):
            if conf is None:
                self.conf = Session.Configuration.Builder().build()
            else:
                self.conf = conf

        def set_configuration(self,
                              conf: Session.Configuration) -> Session.Builder:
            self.conf = conf
            return self

        def create(self) -> Session:
            return Session(self.conf)
