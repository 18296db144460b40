from __future__ import annotations

import json
import logging
import typing

import numpy as np

from rimaps.cli.Scenario import Scenario
from rimaps.core.Session import Session
from rimaps.verdicts.CheckRegistry import CheckRegistry
from rimaps.verdicts.VerificationReport import Verdict
from rimaps.verdicts.VerificationReport import VerificationReport


class ScenarioRunner:
    """Runs the checks of a scenario in declaration order.

    Evaluation errors are recorded as ``error`` verdicts of the check that
    raised them; the run itself always completes.
    """
    _LOGGER: logging = logging.getLogger(__name__)

    def __init__(self, session: Session):
        self._session = session

    def sample_points(self, scenario: Scenario) -> typing.List[np.ndarray]:
        conf = self._session.configuration()
        return scenario.sampling.draw(conf.samples, conf.seed)

    def seed(self, scenario: Scenario) -> int:
        conf = self._session.configuration()
        return scenario.sampling.seed if conf.seed is None else conf.seed

    def run_check(self,
                  scenario: Scenario,
                  check: str,
                  points: typing.Sequence[np.ndarray],
                  tolerance: float = None) -> VerificationReport:
        tol = scenario.tolerance_for(check, tolerance)
        entry = CheckRegistry.get(check)
        try:
            report = CheckRegistry.run(self._session, check,
                                       scenario.subject(), points, tol)
        except (ValueError, ArithmeticError, np.linalg.LinAlgError) as ex:
            self._LOGGER.error("{} on {} raised {}: {}".format(
                check, scenario.target, type(ex).__name__, ex))
            point = getattr(ex, "point", None)
            return VerificationReport.error(
                check, tol if tol is not None else
                entry.default_tolerance(self._session), len(points), point,
                "{}: {}".format(type(ex).__name__, ex))
        self._LOGGER.debug("{}: {}".format(check, report))
        return report

    def run_scenario(self,
                     scenario: Scenario,
                     tolerance: float = None) -> typing.Dict[str, typing.Any]:
        """Report document ``{scenario, seed, checks}``; ``tolerance``
        replaces the scenario-wide tolerance but not per-check values."""
        points = self.sample_points(scenario)
        self._LOGGER.info("Running {} on {} samples: {}".format(
            scenario.name, len(points), ", ".join(scenario.checks)))
        reports = [
            self.run_check(scenario, check, points, tolerance)
            for check in scenario.checks
        ]
        return {
            "scenario": scenario.name,
            "seed": self.seed(scenario),
            "checks": [report.to_dict() for report in reports],
        }

    @staticmethod
    def exit_status(document: typing.Dict[str, typing.Any]) -> int:
        failures = [
            c for c in document["checks"]
            if Verdict(c["verdict"]).is_failure()
        ]
        return 1 if failures else 0

    @staticmethod
    def to_json(document: typing.Dict[str, typing.Any]) -> str:
        return json.dumps(document, indent=2)

    @staticmethod
    def to_text(document: typing.Dict[str, typing.Any]) -> str:
        lines = ["scenario {} (seed {})".format(document["scenario"],
                                               document["seed"])]
        for check in document["checks"]:
            line = "  {:<13} {:<24} max residual {:.3e} (tol {:.1e}, {} " \
                   "samples)".format(check["verdict"], check["name"],
                                     check["max_residual"],
                                     check["tolerance"], check["samples"])
            lines.append(line)
            detail = check["worst_offender"]["detail"]
            if detail and check["verdict"] != Verdict.PASS.value:
                point = check["worst_offender"]["point"]
                lines.append("      {}{}".format(
                    detail, "" if point is None else " at {}".format(
                        ", ".join("{:.6g}".format(c) for c in point))))
        return "\n".join(lines)
