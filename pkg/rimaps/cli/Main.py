from __future__ import annotations

import argparse
import logging
import os
import sys
import typing

from rimaps.cli.Catalog import Catalog
from rimaps.cli.Scenario import Scenario
from rimaps.cli.ScenarioParser import ScenarioParser
from rimaps.cli.ScenarioRunner import ScenarioRunner
from rimaps.core.Session import Session
from rimaps.Version import Version

_LOGGER: logging = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rimaps",
        description="Verify anti-invariant Riemannian maps on coordinate "
        "charts.")
    parser.add_argument("--version",
                        action="version",
                        version=Version.version_string())
    parser.add_argument("-v",
                        "--verbose",
                        action="count",
                        default=0,
                        help="-v for progress, -vv for per-sample detail")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify",
                                 help="run the checks of a scenario file")
    verify.add_argument(
        "scenario",
        help="scenario file, or the name of a shipped scenario")
    verify.add_argument("--tolerance",
                        type=float,
                        default=None,
                        help="scenario-wide tolerance")
    verify.add_argument("--samples",
                        type=int,
                        default=None,
                        help="sample count, overriding the scenario")
    verify.add_argument("--seed",
                        type=int,
                        default=None,
                        help="random seed, overriding the scenario")
    verify.add_argument("--json",
                        metavar="PATH",
                        default=None,
                        help="write the JSON report to PATH ('-' for stdout)")
    verify.add_argument("--threads",
                        type=int,
                        default=1,
                        help="worker threads for sample-level parallelism")
    verify.add_argument("--rank-threshold",
                        type=float,
                        default=None,
                        help="relative singular value threshold for rank")

    commands.add_parser("catalog", help="list the shipped scenarios")

    describe = commands.add_parser("describe",
                                   help="print a shipped scenario")
    describe.add_argument("name")
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def load_scenario(reference: str) -> Scenario:
    if os.path.exists(reference):
        return ScenarioParser.parse_file(reference)
    return Catalog.load(reference)


def verify(args: argparse.Namespace) -> int:
    builder = Session.Configuration.Builder() \
        .set_threads(args.threads) \
        .set_samples(args.samples) \
        .set_seed(args.seed)
    if args.rank_threshold is not None:
        builder.set_rank_threshold(args.rank_threshold)
    scenario = load_scenario(args.scenario)
    with Session.Builder(builder.build()).create() as session:
        runner = ScenarioRunner(session)
        document = runner.run_scenario(scenario, args.tolerance)
    if args.json == "-":
        print(ScenarioRunner.to_json(document))
    else:
        print(ScenarioRunner.to_text(document))
        if args.json is not None:
            with open(args.json, "w", encoding="utf-8") as f:
                f.write(ScenarioRunner.to_json(document))
                f.write("\n")
    return ScenarioRunner.exit_status(document)


def catalog() -> int:
    for name, description in Catalog.entries():
        print("{:<22} {}".format(name, description))
    return 0


def describe(name: str) -> int:
    scenario = Catalog.load(name)
    print("{}: {}".format(scenario.name, scenario.description))
    subject = scenario.subject()
    print("{} {} ({})".format(scenario.target_kind, scenario.target, subject))
    print("sampling: {}".format(scenario.sampling))
    print("checks: {}".format(", ".join(scenario.checks) or "none"))
    print()
    print(Catalog.text(name), end="")
    return 0


def main(argv: typing.Sequence[str] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.command == "verify":
            return verify(args)
        if args.command == "catalog":
            return catalog()
        return describe(args.name)
    except (ScenarioParser.ParseException, Catalog.UnknownScenarioException,
            OSError, TypeError) as ex:
        _LOGGER.debug("Usage error", exc_info=ex)
        print("rimaps: error: {}".format(ex), file=sys.stderr)
        return 2
