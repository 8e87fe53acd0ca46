"""
Scenario Harness
"""

from catenary_robot.harness.engine import ScenarioEngine, run
from catenary_robot.harness.export import (
    CHANNEL_GROUPS,
    export,
    export_csv,
    export_json,
    plot,
    read_trace,
    resolve_channels,
)
from catenary_robot.harness.metrics import SummaryStats, TrackingMetrics, stats
from catenary_robot.harness.scenario import (
    BUILTIN_DESCRIPTIONS,
    ScenarioSpec,
    builtin_scenarios,
    get_builtin,
    load_scenario,
    parse_scenario,
    save_scenario,
)
from catenary_robot.harness.trace import COLUMNS, RunTrace

__all__ = [
    'BUILTIN_DESCRIPTIONS',
    'CHANNEL_GROUPS',
    'COLUMNS',
    'RunTrace',
    'ScenarioEngine',
    'ScenarioSpec',
    'SummaryStats',
    'TrackingMetrics',
    'builtin_scenarios',
    'export',
    'export_csv',
    'export_json',
    'get_builtin',
    'load_scenario',
    'parse_scenario',
    'plot',
    'read_trace',
    'resolve_channels',
    'run',
    'save_scenario',
    'stats',
]
