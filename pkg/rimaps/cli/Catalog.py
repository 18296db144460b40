from __future__ import annotations

import os
import typing

from rimaps.cli.Scenario import Scenario
from rimaps.cli.ScenarioParser import ScenarioParser


class Catalog:
    """Scenario files shipped with the package."""
    directory = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                             "scenarios")
    extension = ".scn"
    aliases = {"example_3_2": "linear_lagrangian"}

    @staticmethod
    def names() -> typing.List[str]:
        return sorted(
            os.path.splitext(f)[0] for f in os.listdir(Catalog.directory)
            if f.endswith(Catalog.extension))

    @staticmethod
    def path(name: str) -> str:
        name = Catalog.aliases.get(name, name)
        if name not in Catalog.names():
            raise Catalog.UnknownScenarioException(name)
        return os.path.join(Catalog.directory, name + Catalog.extension)

    @staticmethod
    def text(name: str) -> str:
        with open(Catalog.path(name), "r", encoding="utf-8") as f:
            return f.read()

    @staticmethod
    def load(name: str) -> Scenario:
        return ScenarioParser.parse_file(Catalog.path(name))

    @staticmethod
    def entries() -> typing.List[typing.Tuple[str, str]]:
        return [(name, Catalog.load(name).description)
                for name in Catalog.names()]

    class UnknownScenarioException(KeyError):
        def __init__(self, name: str):
            super().__init__("No shipped scenario named '{}'".format(name))
            self.name = name
