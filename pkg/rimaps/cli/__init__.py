from rimaps.cli.Catalog import Catalog
from rimaps.cli.Scenario import Sampling
from rimaps.cli.Scenario import Scenario
from rimaps.cli.ScenarioParser import ScenarioParser
from rimaps.cli.ScenarioRunner import ScenarioRunner
