from __future__ import annotations

import logging
import os
import re
import typing

from rimaps.cli.Scenario import Sampling
from rimaps.cli.Scenario import Scenario
from rimaps.expr import ExpressionParser
from rimaps.geometry.ManifoldSpec import ManifoldSpec
from rimaps.maps.MapSpec import MapSpec
from rimaps.verdicts.CheckRegistry import CheckRegistry


class ScenarioParser:
    """Line-oriented scenario files.

    ``[manifold NAME]``, ``[map NAME]`` and one ``[verify]`` section hold
    ``key = value`` lines; ``#`` starts a comment line. Indices in
    ``g i j`` and ``J i j`` keys are 1-based. Every reference and dimension
    is validated before a Scenario is returned.
    """
    _LOGGER: logging = logging.getLogger(__name__)
    _section_pattern = re.compile(
        r"^\[\s*(?P<kind>[A-Za-z]+)(?:\s+(?P<name>[A-Za-z_][A-Za-z_0-9]*))?"
        r"\s*\]$")
    _metric_key = re.compile(r"^g\s+(\d+)\s+(\d+)$")
    _structure_key = re.compile(r"^J\s+(\d+)\s+(\d+)$")
    _map_keys = ("source", "target", "components")
    _verify_keys = ("map", "manifold", "name", "description", "sampling",
                    "seed", "count", "region", "point", "checks", "tolerance")

    class Entry:
        key: str
        value: str
        line: int
        column: int

        def __init__(self, key: str, value: str, line: int, column: int):
            self.key = key
            self.value = value
            self.line = line
            self.column = column

    class Section:
        kind: str
        name: typing.Union[str, None]
        line: int
        entries: typing.List[ScenarioParser.Entry]

        def __init__(self, kind: str, name: typing.Union[str, None],
                     line: int):
            self.kind = kind
            self.name = name
            self.line = line
            self.entries = []

        def first(
                self,
                key: str) -> typing.Union[ScenarioParser.Entry, None]:
            for entry in self.entries:
                if entry.key == key:
                    return entry
            return None

        def require(self, key: str) -> ScenarioParser.Entry:
            entry = self.first(key)
            if entry is None:
                raise ScenarioParser.ParseException(
                    "[{}{}] is missing '{}'".format(
                        self.kind, "" if self.name is None else " " +
                        self.name, key), self.line, 1)
            return entry

    @staticmethod
    def parse_scenario(text: str, name: str = "scenario") -> Scenario:
        return ScenarioParser().parse(text, name)

    @staticmethod
    def parse_file(path: str) -> Scenario:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
        name = os.path.splitext(os.path.basename(path))[0]
        return ScenarioParser().parse(text, name)

    def parse(self, text: str, name: str = "scenario") -> Scenario:
        sections = self._sections(text)
        manifolds: typing.Dict[str, ManifoldSpec] = {}
        maps: typing.Dict[str, MapSpec] = {}
        verify = [s for s in sections if s.kind == "verify"]
        if len(verify) != 1:
            line = verify[1].line if len(verify) > 1 else 1
            raise ScenarioParser.ParseException(
                "Expected exactly one [verify] section, found {}".format(
                    len(verify)), line, 1)
        for section in sections:
            if section.kind == "manifold":
                self._unique(section, manifolds, maps)
                manifolds[section.name] = self._manifold(section)
        for section in sections:
            if section.kind == "map":
                self._unique(section, manifolds, maps)
                maps[section.name] = self._map(section, manifolds)
        scenario = self._verify(verify[0], name, manifolds, maps)
        self._LOGGER.info("Parsed scenario {}: {}".format(name, scenario))
        return scenario

    @staticmethod
    def _unique(section: ScenarioParser.Section,
                manifolds: typing.Dict[str, ManifoldSpec],
                maps: typing.Dict[str, MapSpec]) -> None:
        if section.name in manifolds or section.name in maps:
            raise ScenarioParser.ParseException(
                "Duplicate name '{}'".format(section.name), section.line, 1)

    def _sections(self, text: str) -> typing.List[ScenarioParser.Section]:
        sections: typing.List[ScenarioParser.Section] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            indent = len(raw) - len(raw.lstrip())
            if stripped.startswith("["):
                match = self._section_pattern.match(stripped)
                if match is None:
                    raise ScenarioParser.ParseException(
                        "Malformed section header", number, indent + 1)
                kind = match.group("kind")
                name = match.group("name")
                if kind not in ("manifold", "map", "verify"):
                    raise ScenarioParser.ParseException(
                        "Unknown section '{}'".format(kind), number,
                        indent + 2)
                if (kind == "verify") != (name is None):
                    raise ScenarioParser.ParseException(
                        "[{}] {} a name".format(
                            kind, "takes no" if kind == "verify" else "needs"),
                        number, indent + 1)
                sections.append(ScenarioParser.Section(kind, name, number))
                continue
            if "=" not in stripped:
                raise ScenarioParser.ParseException("Expected 'key = value'",
                                                    number, indent + 1)
            if not sections:
                raise ScenarioParser.ParseException(
                    "Entry outside of a section", number, indent + 1)
            position = raw.index("=")
            key = " ".join(raw[:position].split())
            value_part = raw[position + 1:]
            value = value_part.strip()
            column = position + 2 + (len(value_part) - len(value_part.lstrip()))
            sections[-1].entries.append(
                ScenarioParser.Entry(key, value, number, column))
        return sections

    @staticmethod
    def split_top_level(text: str) -> typing.List[typing.Tuple[str, int]]:
        """Split at commas outside parentheses, keeping each piece's
        offset."""
        pieces = []
        depth = 0
        start = 0
        for i, char in enumerate(text):
            if char == "(":
                depth += 1
            elif char == ")":
                depth -= 1
            elif char == "," and depth == 0:
                pieces.append((text[start:i], start))
                start = i + 1
        pieces.append((text[start:], start))
        result = []
        for piece, offset in pieces:
            lead = len(piece) - len(piece.lstrip())
            result.append((piece.strip(), offset + lead))
        return result

    @staticmethod
    def _parsed(parser: ExpressionParser, text: str, line: int, column: int):
        try:
            return parser.parse(text)
        except ExpressionParser.ParseException as ex:
            raise ScenarioParser.ParseException(str(ex), line,
                                                column + ex.position) from ex

    def _number(self, entry: ScenarioParser.Entry, text: str = None,
                offset: int = 0) -> float:
        text = entry.value if text is None else text
        expression = self._parsed(ExpressionParser([]), text, entry.line,
                                  entry.column + offset)
        try:
            return expression.evaluate([])
        except ArithmeticError as ex:
            raise ScenarioParser.ParseException(str(ex), entry.line,
                                                entry.column + offset) from ex

    @staticmethod
    def _integer(entry: ScenarioParser.Entry) -> int:
        try:
            return int(entry.value)
        except ValueError:
            raise ScenarioParser.ParseException(
                "'{}' expects an integer, got '{}'".format(
                    entry.key, entry.value), entry.line, entry.column)

    @staticmethod
    def _index(entry: ScenarioParser.Entry, text: str, dim: int) -> int:
        index = int(text)
        if not 1 <= index <= dim:
            raise ScenarioParser.DimensionMismatchException(
                "Index {} outside 1..{}".format(index, dim), entry.line, 1)
        return index - 1

    def _manifold(self, section: ScenarioParser.Section) -> ManifoldSpec:
        coords_entry = section.require("coords")
        coords = [c for c, _ in self.split_top_level(coords_entry.value)]
        if not all(re.match(r"^[A-Za-z_][A-Za-z_0-9]*$", c) for c in coords):
            raise ScenarioParser.ParseException("Malformed coordinate list",
                                                coords_entry.line,
                                                coords_entry.column)
        if len(set(coords)) != len(coords):
            raise ScenarioParser.ParseException("Duplicate coordinate names",
                                                coords_entry.line,
                                                coords_entry.column)
        builder = ManifoldSpec.Builder(section.name, coords)
        parser = ExpressionParser(coords)
        dim = len(coords)
        metric_seen: typing.Dict[typing.Tuple[int, int], str] = {}
        identity = False
        for entry in section.entries:
            metric = self._metric_key.match(entry.key)
            structure = self._structure_key.match(entry.key)
            if entry.key == "coords":
                continue
            if entry.key == "metric":
                if entry.value != "identity":
                    raise ScenarioParser.ParseException(
                        "metric must be 'identity' or given by 'g i j' "
                        "entries", entry.line, entry.column)
                builder.set_identity_metric()
                identity = True
            elif entry.key == "J":
                if entry.value != "canonical":
                    raise ScenarioParser.ParseException(
                        "J must be 'canonical' or given by 'J i j' entries",
                        entry.line, entry.column)
                builder.set_canonical_structure()
            elif metric is not None:
                i = self._index(entry, metric.group(1), dim)
                j = self._index(entry, metric.group(2), dim)
                key = (min(i, j), max(i, j))
                if key in metric_seen and metric_seen[key] != entry.value:
                    raise ScenarioParser.ParseException(
                        "Conflicting metric entries for ({}, {})".format(
                            i + 1, j + 1), entry.line, entry.column)
                metric_seen[key] = entry.value
                builder.set_metric(
                    i, j,
                    self._parsed(parser, entry.value, entry.line,
                                 entry.column))
            elif structure is not None:
                i = self._index(entry, structure.group(1), dim)
                j = self._index(entry, structure.group(2), dim)
                builder.set_structure(
                    i, j,
                    self._parsed(parser, entry.value, entry.line,
                                 entry.column))
            else:
                raise ScenarioParser.ParseException(
                    "Unknown manifold key '{}'".format(entry.key), entry.line,
                    1)
        if identity and metric_seen:
            raise ScenarioParser.ParseException(
                "metric = identity cannot be combined with 'g i j' entries",
                section.line, 1)
        if not identity and not metric_seen:
            raise ScenarioParser.ParseException(
                "[manifold {}] declares no metric".format(section.name),
                section.line, 1)
        try:
            return builder.build()
        except ManifoldSpec.InvalidSpecException as ex:
            raise ScenarioParser.ParseException(str(ex), section.line,
                                                1) from ex

    def _reference(self, entry: ScenarioParser.Entry,
                   known: typing.Dict[str, typing.Any], what: str):
        if entry.value not in known:
            raise ScenarioParser.UnresolvedReferenceException(
                "Undeclared {} '{}'".format(what, entry.value), entry.line,
                entry.column)
        return known[entry.value]

    def _map(self, section: ScenarioParser.Section,
             manifolds: typing.Dict[str, ManifoldSpec]) -> MapSpec:
        for entry in section.entries:
            if entry.key not in self._map_keys:
                raise ScenarioParser.ParseException(
                    "Unknown map key '{}'".format(entry.key), entry.line, 1)
        source = self._reference(section.require("source"), manifolds,
                                 "manifold")
        target = self._reference(section.require("target"), manifolds,
                                 "manifold")
        entry = section.require("components")
        pieces = self.split_top_level(entry.value)
        if len(pieces) != target.dim:
            raise ScenarioParser.DimensionMismatchException(
                "Map {} has {} components, {} has dimension {}".format(
                    section.name, len(pieces), target.name, target.dim),
                entry.line, entry.column)
        parser = ExpressionParser(source.coords)
        components = [
            self._parsed(parser, text, entry.line, entry.column + offset)
            for text, offset in pieces
        ]
        return MapSpec(section.name, source, target, components)

    def _verify(self, section: ScenarioParser.Section, name: str,
                manifolds: typing.Dict[str, ManifoldSpec],
                maps: typing.Dict[str, MapSpec]) -> Scenario:
        tolerances: typing.Dict[str, float] = {}
        points: typing.List[typing.List[float]] = []
        for entry in section.entries:
            if entry.key.startswith("tolerance."):
                check = entry.key[len("tolerance."):]
                if check not in CheckRegistry.names():
                    raise ScenarioParser.ParseException(
                        "Unknown check '{}'".format(check), entry.line, 11)
                tolerances[check] = self._tolerance(entry)
            elif entry.key not in self._verify_keys:
                raise ScenarioParser.ParseException(
                    "Unknown verify key '{}'".format(entry.key), entry.line, 1)
        map_entry = section.first("map")
        manifold_entry = section.first("manifold")
        if (map_entry is None) == (manifold_entry is None):
            raise ScenarioParser.ParseException(
                "[verify] needs exactly one of 'map' or 'manifold'",
                section.line, 1)
        if map_entry is not None:
            subject = self._reference(map_entry, maps, "map")
            target, kind, source = map_entry.value, "map", subject.source
            allowed = CheckRegistry.names()
        else:
            source = self._reference(manifold_entry, manifolds, "manifold")
            target, kind = manifold_entry.value, "manifold"
            allowed = CheckRegistry.manifold_names()
        checks = self._checks(section.first("checks"), allowed)
        for check in tolerances:
            if check not in allowed:
                raise ScenarioParser.ParseException(
                    "Check '{}' does not apply to a {}".format(check, kind),
                    section.line, 1)
        for entry in section.entries:
            if entry.key == "point":
                pieces = self.split_top_level(entry.value)
                if len(pieces) != source.dim:
                    raise ScenarioParser.DimensionMismatchException(
                        "Point has {} coordinates, {} has dimension {}".format(
                            len(pieces), source.name, source.dim), entry.line,
                        entry.column)
                points.append([
                    self._number(entry, text, offset)
                    for text, offset in pieces
                ])
        sampling = self._sampling(section, source, points)
        tolerance_entry = section.first("tolerance")
        return Scenario(
            self._text(section, "name", name), manifolds, maps, target, kind,
            sampling, checks, self._text(section, "description", ""),
            None if tolerance_entry is None else
            self._tolerance(tolerance_entry), tolerances)

    @staticmethod
    def _text(section: ScenarioParser.Section, key: str, default: str) -> str:
        entry = section.first(key)
        return default if entry is None else entry.value

    def _tolerance(self, entry: ScenarioParser.Entry) -> float:
        value = self._number(entry)
        if not value > 0:
            raise ScenarioParser.ParseException(
                "Tolerance must be positive", entry.line, entry.column)
        return value

    @staticmethod
    def _checks(entry: typing.Union[ScenarioParser.Entry, None],
                allowed: typing.List[str]) -> typing.List[str]:
        if entry is None or entry.value == "all":
            return list(allowed)
        checks = []
        for check, offset in ScenarioParser.split_top_level(entry.value):
            if not check:
                if entry.value.strip():
                    raise ScenarioParser.ParseException(
                        "Empty check name", entry.line, entry.column + offset)
                continue
            if check not in allowed:
                raise ScenarioParser.ParseException(
                    "Unknown check '{}'".format(check) if check not in
                    CheckRegistry.names() else
                    "Check '{}' needs a map".format(check), entry.line,
                    entry.column + offset)
            checks.append(check)
        return checks

    def _sampling(self, section: ScenarioParser.Section,
                  source: ManifoldSpec,
                  points: typing.List[typing.List[float]]) -> Sampling:
        strategy_entry = section.first("sampling")
        if strategy_entry is None:
            strategy = Sampling.POINTS if points else Sampling.UNIFORM
        else:
            strategy = strategy_entry.value
            if strategy not in Sampling.strategies:
                raise ScenarioParser.ParseException(
                    "Unknown sampling '{}'".format(strategy),
                    strategy_entry.line, strategy_entry.column)
        count_entry = section.first("count")
        count = 16
        if count_entry is not None:
            count = self._integer(count_entry)
            if count < 1:
                raise ScenarioParser.ParseException(
                    "count must be at least 1", count_entry.line,
                    count_entry.column)
        seed_entry = section.first("seed")
        seed = 0 if seed_entry is None else self._integer(seed_entry)
        region = []
        region_entry = section.first("region")
        if region_entry is not None:
            pieces = self.split_top_level(region_entry.value)
            if len(pieces) != source.dim:
                raise ScenarioParser.DimensionMismatchException(
                    "Region has {} intervals, {} has dimension {}".format(
                        len(pieces), source.name, source.dim),
                    region_entry.line, region_entry.column)
            for text, offset in pieces:
                bounds = text.split(":")
                if len(bounds) != 2:
                    raise ScenarioParser.ParseException(
                        "Interval must read 'lo : hi'", region_entry.line,
                        region_entry.column + offset)
                lo = self._number(region_entry, bounds[0], offset)
                hi = self._number(region_entry, bounds[1],
                                  offset + len(bounds[0]) + 1)
                if not lo <= hi:
                    raise ScenarioParser.ParseException(
                        "Empty interval {}".format(text), region_entry.line,
                        region_entry.column + offset)
                region.append((lo, hi))
        if strategy == Sampling.POINTS and not points:
            raise ScenarioParser.ParseException(
                "sampling = points needs at least one 'point' line",
                section.line, 1)
        if strategy != Sampling.POINTS and region_entry is None:
            raise ScenarioParser.ParseException(
                "sampling = {} needs a region".format(strategy), section.line,
                1)
        return Sampling(strategy, count, seed, region, points)

    class ParseException(ValueError):
        line: int
        column: int

        def __init__(self, message: str, line: int, column: int):
            super().__init__("line {}, column {}: {}".format(
                line, column, message))
            self.line = line
            self.column = column

    class UnresolvedReferenceException(ParseException):
        pass

    class DimensionMismatchException(ParseException):
        pass
