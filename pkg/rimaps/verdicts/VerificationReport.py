from __future__ import annotations

import enum
import math
import typing


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUS_PASS = "vacuous-pass"
    INCONSISTENT = "inconsistent"
    ERROR = "error"

    def is_failure(self) -> bool:
        return self in (Verdict.FAIL, Verdict.INCONSISTENT, Verdict.ERROR)


class VerificationReport:
    """Outcome of one named check over a set of sample points."""
    name: str
    verdict: Verdict
    residuals: typing.Dict[str, float]
    tolerance: float
    samples: int
    worst_offender: VerificationReport.WorstOffender
    details: typing.Dict[str, typing.Any]

    def __init__(self,
                 name: str,
                 verdict: Verdict,
                 residuals: typing.Dict[str, float],
                 tolerance: float,
                 samples: int,
                 worst_offender: VerificationReport.WorstOffender = None,
                 details: typing.Dict[str, typing.Any] = None):
        self.name = name
        self.verdict = verdict
        self.residuals = dict(residuals)
        self.tolerance = tolerance
        self.samples = samples
        self.worst_offender = (worst_offender if worst_offender is not None
                               else VerificationReport.WorstOffender(None, ""))
        self.details = dict(details) if details is not None else {}

    def __repr__(self) -> str:
        return "VerificationReport({}, {}, max_residual={})".format(
            self.name, self.verdict.value, self.max_residual)

    @property
    def max_residual(self) -> float:
        if not self.residuals:
            return 0.0
        return max(self.residuals.values())

    @property
    def passed(self) -> bool:
        return self.verdict in (Verdict.PASS, Verdict.VACUOUS_PASS)

    def residual(self, key: str) -> float:
        return self.residuals[key]

    def to_dict(self) -> typing.Dict[str, typing.Any]:
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "max_residual": self.max_residual,
            "residuals": dict(self.residuals),
            "tolerance": self.tolerance,
            "samples": self.samples,
            "worst_offender": self.worst_offender.to_dict(),
            "details": self.details,
        }

    @staticmethod
    def vacuous(name: str, tolerance: float, samples: int,
                detail: str) -> VerificationReport:
        return VerificationReport(
            name, Verdict.VACUOUS_PASS, {}, tolerance, samples,
            VerificationReport.WorstOffender(None, detail))

    @staticmethod
    def error(name: str, tolerance: float, samples: int, point,
              detail: str) -> VerificationReport:
        return VerificationReport(
            name, Verdict.ERROR, {}, tolerance, samples,
            VerificationReport.WorstOffender(point, detail))

    class WorstOffender:
        point: typing.Union[typing.List[float], None]
        detail: str

        def __init__(self, point: typing.Union[typing.Sequence[float], None],
                     detail: str):
            self.point = None if point is None else [float(c) for c in point]
            self.detail = detail

        def to_dict(self) -> typing.Dict[str, typing.Any]:
            return {"point": self.point, "detail": self.detail}

    class Accumulator:
        """Per-sample residual collector.

        ``merge`` is associative and commutative: maxima are kept per key
        and the worst offender ties are broken on the point coordinates.
        """
        samples: int
        maxima: typing.Dict[str, float]
        worst: typing.Union[typing.Tuple[float, typing.Tuple[float, ...], str],
                            None]

        def __init__(self):
            self.samples = 0
            self.maxima = {}
            self.worst = None

        @staticmethod
        def _clean(value: float) -> float:
            return math.inf if math.isnan(value) else float(value)

        def add(self,
                point: typing.Sequence[float],
                residuals: typing.Dict[str, float],
                detail: str = "") -> VerificationReport.Accumulator:
            other = VerificationReport.Accumulator()
            other.samples = 1
            other.maxima = {
                key: self._clean(value)
                for key, value in residuals.items()
            }
            if other.maxima:
                key = max(other.maxima, key=lambda k: (other.maxima[k], k))
                text = "{} = {!r}".format(key, other.maxima[key])
                if detail:
                    text += "; " + detail
                other.worst = (other.maxima[key],
                               tuple(float(c) for c in point), text)
            merged = self.merge(other)
            self.samples = merged.samples
            self.maxima = merged.maxima
            self.worst = merged.worst
            return self

        def merge(
            self, other: VerificationReport.Accumulator
        ) -> VerificationReport.Accumulator:
            result = VerificationReport.Accumulator()
            result.samples = self.samples + other.samples
            result.maxima = dict(self.maxima)
            for key, value in other.maxima.items():
                result.maxima[key] = max(result.maxima.get(key, value), value)
            candidates = [w for w in (self.worst, other.worst) if w is not None]
            if candidates:
                result.worst = max(candidates,
                                   key=lambda w: (w[0], tuple(-c for c in w[1])))
            return result

        def build(self,
                  name: str,
                  tolerance: float,
                  details: typing.Dict[str, typing.Any] = None
                  ) -> VerificationReport:
            if self.samples == 0:
                return VerificationReport.vacuous(name, tolerance, 0,
                                                  "no samples")
            verdict = (Verdict.PASS if all(
                value < tolerance for value in self.maxima.values()) else
                       Verdict.FAIL)
            offender = (VerificationReport.WorstOffender(None, "")
                        if self.worst is None else
                        VerificationReport.WorstOffender(
                            self.worst[1], self.worst[2]))
            return VerificationReport(name, verdict, self.maxima, tolerance,
                                      self.samples, offender, details)
