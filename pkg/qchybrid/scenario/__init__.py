"""
# Scenarios

YAML scenario files, their runners, and the `qchybrid` command line.
"""

from .config import (
    ScenarioError,
    Scenario,
    HybridSpec,
    StateSpec,
    TimeGrid,
    PointSpec,
    ChecksSpec,
    JacobiSpec,
    UniquenessSpec,
    PositivitySpec,
    load_scenario,
    scenario_from_dict,
    with_overrides,
    parse_observable,
    grid_times,
    landscape_grid,
)
from .runners import CheckFailure, Runner, Subcommand
from .writers import ArtifactWriter, MANIFEST
from .cli import main
