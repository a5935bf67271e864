from .errors import ScenarioError
from .scenario import (
	AGENT_TYPES, AgentSpec, LinkSpec, MonitorSpec, ScenarioConfig, SignalSpec, SipSpec,
	apply_override, load_scenario, parse_scenario, parse_value, split_override,
)
from .runner import RunResult, Simulation, run_scenario
from .reports import write_reports
from .commands import EXIT_CONFIG, EXIT_OK, compare, run
