# -*- coding: utf-8 -*-
"""Scenario documents: JSON in, a validated ScenarioConfig out.

Every duration is in integer microseconds and every price in ticks of the
venue's tick_size. Validation runs before anything is scheduled and names the
offending field by path, the same path syntax --override and --toggle use.
"""
import inspect
import json
import logging
import os
import re
from dataclasses import asdict, dataclass, field, fields
from typing import List, Optional

import agents
import config
from agents import AgentCapabilities, AgentError, SIGNAL_ID
from simnet import SIP_ID
from venue import VenueConfig

from .errors import ScenarioError

log = logging.getLogger("cli.scenario")

AGENT_TYPES = {
	"market_maker": agents.MarketMaker,
	"scripted": agents.ScriptedTrader,
	"broker": agents.Broker,
	"investor": agents.Investor,
	"fingerprinter": agents.Fingerprinter,
	"pinger": agents.Pinger,
	"quote_stuffer": agents.QuoteStuffer,
	"sniper": agents.Sniper,
	"scalper": agents.Scalper,
	"queue_jumper": agents.QueueJumper,
}

# agent params that name venues or instruments
VENUE_PARAMS = ("venue_id", "watch_venue", "target_venue", "trigger_venue")
INSTRUMENT_PARAMS = ("instrument_id",)

_PATH_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)|\[(\d+)\]")


@dataclass
class LinkSpec:
	src: str
	dst: str
	base_latency_us: int
	jitter_us: int = 0
	timestamp_noise_us: int = 0


@dataclass
class SipSpec:
	enabled: bool = True
	latency_us: Optional[int] = None


@dataclass
class SignalSpec:
	instrument_id: str
	initial_value: int
	jump_ticks: int = 3
	first_jump_us: int = 25000
	interval_us: int = 50000
	jitter_us: int = 0
	count: int = 0
	jumps: Optional[list] = None
	# None sends the signal to every agent
	subscribers: Optional[list] = None


@dataclass
class MonitorSpec:
	otr_threshold: Optional[float] = None
	otr_window_us: Optional[int] = None
	staleness_threshold_us: Optional[int] = None
	queue_whitelist: list = field(default_factory=list)
	fair_access_groups: list = field(default_factory=list)
	fingerprint_population: Optional[list] = None


@dataclass
class AgentSpec:
	id: str
	type: str
	capabilities: AgentCapabilities = field(default_factory=AgentCapabilities)
	params: dict = field(default_factory=dict)
	# venues whose direct feeds the agent takes; None is every venue
	venues: Optional[list] = None
	sip: bool = True

	def to_dict(self):
		return {
			"id": self.id,
			"type": self.type,
			"capabilities": self.capabilities.to_dict(),
			"params": self.params,
			"venues": self.venues,
			"sip": self.sip,
		}


@dataclass
class ScenarioConfig:
	duration_us: int
	seed: int = 0
	name: str = "scenario"
	description: str = ""
	instruments: List[str] = field(default_factory=list)
	venues: List[VenueConfig] = field(default_factory=list)
	links: List[LinkSpec] = field(default_factory=list)
	sip: SipSpec = field(default_factory=SipSpec)
	agents: List[AgentSpec] = field(default_factory=list)
	signal: Optional[SignalSpec] = None
	monitors: MonitorSpec = field(default_factory=MonitorSpec)
	values: dict = field(default_factory=dict)
	default_latency_us: Optional[int] = None
	l2_depth: Optional[int] = None
	generic_participant_id: Optional[str] = None

	@property
	def venue_ids(self):
		return [v.venue_id for v in self.venues]

	@property
	def agent_ids(self):
		return [a.id for a in self.agents]

	@property
	def endpoint_ids(self):
		res = set(self.venue_ids) | set(self.agent_ids)
		if self.sip.enabled:
			res.add(SIP_ID)
		if self.signal is not None:
			res.add(SIGNAL_ID)
		return res

	def setting(self, name):
		"""Scenario value, or the app default when the scenario leaves it out."""
		value = getattr(self, name)
		return config.default(name) if value is None else value

	@classmethod
	def from_dict(cls, data):
		"""Build and validate; raises ScenarioError naming the field at fault."""
		if not isinstance(data, dict):
			raise ScenarioError("scenario must be a JSON object")
		data = dict(data)
		_known(data, cls, "")
		for required in ("duration_us", "instruments", "venues"):
			if required not in data:
				raise ScenarioError("is required", required)
		data["venues"] = [_venue(v, F"venues[{i}]") for i, v in enumerate(_list(data, "venues"))]
		data["links"] = [_build(LinkSpec, l, F"links[{i}]") for i, l in enumerate(_list(data, "links"))]
		data["agents"] = [_agent(a, F"agents[{i}]") for i, a in enumerate(_list(data, "agents"))]
		data["sip"] = _build(SipSpec, data.get("sip") or {}, "sip")
		data["monitors"] = _build(MonitorSpec, data.get("monitors") or {}, "monitors")
		if data.get("signal") is not None:
			data["signal"] = _build(SignalSpec, data["signal"], "signal")
		scenario = cls(**data)
		scenario.validate()
		return scenario

	def to_dict(self):
		res = {}
		for f in fields(self):
			value = getattr(self, f.name)
			if f.name == "venues":
				value = [v.to_dict() for v in value]
			elif f.name == "agents":
				value = [a.to_dict() for a in value]
			elif f.name in ("links",):
				value = [asdict(v) for v in value]
			elif f.name in ("sip", "monitors", "signal") and value is not None:
				value = asdict(value)
			res[f.name] = value
		return res

	def to_json(self):
		return json.dumps(self.to_dict(), indent=2, sort_keys=True)

	def validate(self):
		if not isinstance(self.duration_us, int) or self.duration_us <= 0:
			raise ScenarioError("must be a positive integer", "duration_us")
		if not isinstance(self.seed, int) or self.seed < 0:
			raise ScenarioError("must be a non-negative integer", "seed")
		if not self.instruments or not all(isinstance(i, str) and i for i in self.instruments):
			raise ScenarioError("must be a non-empty list of instrument ids", "instruments")
		if not self.venues:
			raise ScenarioError("at least one venue is required", "venues")
		_unique(self.venue_ids, "venues", "venue_id")
		_unique(self.agent_ids, "agents", "id")
		reserved = set(self.venue_ids) | {SIP_ID, SIGNAL_ID}
		for i, a in enumerate(self.agents):
			if a.id in reserved:
				raise ScenarioError(F"{a.id} is already a venue or system endpoint", F"agents[{i}].id")
			self._check_agent(a, F"agents[{i}]")
		endpoints = self.endpoint_ids
		for i, link in enumerate(self.links):
			for end in ("src", "dst"):
				if getattr(link, end) not in endpoints:
					raise ScenarioError(F"unknown endpoint {getattr(link, end)}", F"links[{i}].{end}")
			for name in ("base_latency_us", "jitter_us", "timestamp_noise_us"):
				if getattr(link, name) < 0:
					raise ScenarioError("must not be negative", F"links[{i}].{name}")
		if self.signal is not None:
			if self.signal.instrument_id not in self.instruments:
				raise ScenarioError(F"unknown instrument {self.signal.instrument_id}", "signal.instrument_id")
			for j, sub in enumerate(self.signal.subscribers or ()):
				if sub not in self.agent_ids and sub not in self.venue_ids:
					raise ScenarioError(F"unknown endpoint {sub}", F"signal.subscribers[{j}]")
		for instrument in self.values:
			if instrument not in self.instruments:
				raise ScenarioError(F"unknown instrument {instrument}", F"values.{instrument}")
		if self.sip.latency_us is not None and self.sip.latency_us < 0:
			raise ScenarioError("must not be negative", "sip.latency_us")
		for g, group in enumerate(self.monitors.fair_access_groups):
			for j, agent_id in enumerate(group):
				if agent_id not in self.agent_ids:
					raise ScenarioError(F"unknown agent {agent_id}", F"monitors.fair_access_groups[{g}][{j}]")
		if self.monitors.staleness_threshold_us is not None and self.monitors.staleness_threshold_us < 0:
			raise ScenarioError("must not be negative", "monitors.staleness_threshold_us")
		for j, kind in enumerate(self.monitors.queue_whitelist):
			if kind not in ("hide_and_light", "day_iso"):
				raise ScenarioError(F"{kind} is not a documented exception", F"monitors.queue_whitelist[{j}]")

	def _check_agent(self, a, path):
		cls = AGENT_TYPES.get(a.type)
		if cls is None:
			raise ScenarioError(F"unknown agent type {a.type}; expected one of {', '.join(sorted(AGENT_TYPES))}", F"{path}.type")
		for name, msg in a.capabilities.problems():
			raise ScenarioError(msg, F"{path}.capabilities.{name}")
		accepted = inspect.signature(cls.__init__).parameters
		for name in a.params:
			if name in ("self", "agent_id", "network", "capabilities") or name not in accepted:
				raise ScenarioError(F"{a.type} has no parameter {name}", F"{path}.params.{name}")
		for name in VENUE_PARAMS:
			value = a.params.get(name)
			if value is not None and value not in self.venue_ids:
				raise ScenarioError(F"unknown venue {value}", F"{path}.params.{name}")
		for name in INSTRUMENT_PARAMS:
			value = a.params.get(name)
			if value is not None and value not in self.instruments:
				raise ScenarioError(F"unknown instrument {value}", F"{path}.params.{name}")
		for j, venue_id in enumerate(a.params.get("venues") or ()):
			if venue_id not in self.venue_ids:
				raise ScenarioError(F"unknown venue {venue_id}", F"{path}.params.venues[{j}]")
		for j, venue_id in enumerate(a.venues or ()):
			if venue_id not in self.venue_ids:
				raise ScenarioError(F"unknown venue {venue_id}", F"{path}.venues[{j}]")
		for j, action in enumerate(a.params.get("actions") or ()):
			self._check_refs(action, ("venue",), ("instrument",), F"{path}.params.actions[{j}]")
		for j, parent in enumerate(a.params.get("parents") or ()):
			self._check_refs(parent, (), ("instrument",), F"{path}.params.parents[{j}]")
		if a.params.get("flow"):
			self._check_refs(a.params["flow"], ("venue",), ("instrument",), F"{path}.params.flow")
		if a.type == "scalper":
			trigger = a.params.get("trigger", "ping")
			if trigger not in agents.SCALP_TRIGGERS:
				raise ScenarioError(F"unknown scalp trigger {trigger}", F"{path}.params.trigger")
			if trigger == "ping" and a.params.get("ping_price") is None:
				raise ScenarioError("the ping trigger needs a ping_price", F"{path}.params.ping_price")
		if a.type == "queue_jumper":
			try:
				agents.attack_queue_jump(a.params.get("mode", "hide_and_light"), a.capabilities)
			except AgentError as e:
				raise ScenarioError(str(e), F"{path}.params.mode")

	def _check_refs(self, item, venue_keys, instrument_keys, path):
		for key in venue_keys:
			if key in item and item[key] not in self.venue_ids:
				raise ScenarioError(F"unknown venue {item[key]}", F"{path}.{key}")
		for key in instrument_keys:
			if key in item and item[key] not in self.instruments:
				raise ScenarioError(F"unknown instrument {item[key]}", F"{path}.{key}")


def _list(data, key):
	value = data.get(key, [])
	if not isinstance(value, list):
		raise ScenarioError("must be a list", key)
	return value


def _unique(ids, path, key):
	seen = set()
	for i, item in enumerate(ids):
		if item in seen:
			raise ScenarioError(F"duplicate id {item}", F"{path}[{i}].{key}")
		seen.add(item)


def _known(data, cls, path):
	names = {f.name for f in fields(cls)}
	for key in data:
		if key not in names:
			raise ScenarioError("unknown field", F"{path}.{key}" if path else key)


def _build(cls, data, path):
	if not isinstance(data, dict):
		raise ScenarioError("must be an object", path)
	_known(data, cls, path)
	try:
		return cls(**data)
	except TypeError as e:
		raise ScenarioError(str(e), path)


def _venue(data, path):
	if not isinstance(data, dict):
		raise ScenarioError("must be an object", path)
	_known(data, VenueConfig, path)
	data = dict(data)
	data.setdefault("protection_policy", config.default("protection_policy"))
	try:
		venue = VenueConfig.from_dict(data)
	except (TypeError, ValueError) as e:
		raise ScenarioError(str(e), path)
	for name, msg in venue.problems():
		raise ScenarioError(msg, F"{path}.{name}")
	return venue


def _agent(data, path):
	if not isinstance(data, dict):
		raise ScenarioError("must be an object", path)
	_known(data, AgentSpec, path)
	data = dict(data)
	for required in ("id", "type"):
		if required not in data:
			raise ScenarioError("is required", F"{path}.{required}")
	caps = data.get("capabilities") or {}
	if not isinstance(caps, dict):
		raise ScenarioError("must be an object", F"{path}.capabilities")
	_known(caps, AgentCapabilities, F"{path}.capabilities")
	data["capabilities"] = AgentCapabilities.from_dict(caps)
	if not isinstance(data.get("params", {}), dict):
		raise ScenarioError("must be an object", F"{path}.params")
	return AgentSpec(**data)


# overrides

def parse_path(path):
	"""venues[0].speed_bump_in_us -> ["venues", 0, "speed_bump_in_us"]"""
	tokens = []
	for part in path.split("."):
		if not part:
			raise ScenarioError("empty path segment", path)
		consumed = 0
		for m in _PATH_TOKEN.finditer(part):
			if m.start() != consumed:
				break
			tokens.append(m.group(1) if m.group(1) is not None else int(m.group(2)))
			consumed = m.end()
		if consumed != len(part):
			raise ScenarioError(F"cannot parse {part!r}", path)
	return tokens


def parse_value(text):
	"""JSON when it parses, the plain string otherwise."""
	try:
		return json.loads(text)
	except ValueError:
		return text


def split_override(text):
	if "=" not in text:
		raise ScenarioError(F"expected <path>=<value>, got {text!r}")
	path, value = text.split("=", 1)
	return path.strip(), parse_value(value.strip())


def apply_override(data, path, value):
	"""Set path in a raw scenario mapping; the last key may be new, everything before must exist."""
	tokens = parse_path(path)
	node = data
	for depth, token in enumerate(tokens):
		last = depth == len(tokens) - 1
		if isinstance(token, int):
			if not isinstance(node, list) or token >= len(node):
				raise ScenarioError("index out of range", path)
		elif not isinstance(node, dict):
			raise ScenarioError(F"{token} is not inside an object", path)
		elif not last and token not in node:
			raise ScenarioError(F"no field {token}", path)
		if last:
			node[token] = value
		else:
			node = node[token]
	log.debug(F"override {path} = {value!r}")
	return data


def parse_scenario(text, overrides=(), name=None):
	try:
		data = json.loads(text)
	except json.JSONDecodeError as e:
		raise ScenarioError(e.msg, line=e.lineno, column=e.colno)
	if isinstance(data, dict) and name and "name" not in data:
		data["name"] = name
	for item in overrides:
		path, value = split_override(item) if isinstance(item, str) else item
		apply_override(data, path, value)
	return ScenarioConfig.from_dict(data)


def load_scenario(path, overrides=()):
	"""Read, override and validate a scenario file."""
	try:
		with open(path, encoding="utf-8") as f:
			text = f.read()
	except OSError as e:
		raise ScenarioError(F"cannot read {path}: {e.strerror}")
	name = os.path.splitext(os.path.basename(path))[0]
	scenario = parse_scenario(text, overrides, name)
	log.info(F"loaded scenario {scenario.name} from {path}")
	return scenario
