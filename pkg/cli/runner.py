# -*- coding: utf-8 -*-
"""Builds one simulation from a ScenarioConfig and runs it to the end."""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any

import config
from agents import SignalProcess
from engine import MatchingAlgo
from monitors import MonitorSettings, Trace, build_metrics
from simnet import Network, SipState
from timer import Timer
from venue import Venue

from .scenario import AGENT_TYPES

log = logging.getLogger("cli.runner")

_runs = itertools.count(1)


@dataclass
class RunResult:
	scenario: Any
	seed: int
	trace: Trace
	metrics: Any
	violations: list
	trace_hash: str
	values: dict = field(default_factory=dict)
	events: int = 0
	elapsed_ms: int = 0


class Simulation:
	"""Network, SIP, venues, signal and agents for one (scenario, seed).

	Links not named by the scenario get defaults: agent <-> venue from the
	agent's link profile, SIP -> agent likewise, venue <-> SIP and
	signal -> agent zero, anything else the scenario default latency.
	"""

	def __init__(self, scenario, seed=None):
		self.scenario = scenario
		self.seed = scenario.seed if seed is None else int(seed)
		self.run_id = F"{scenario.name}#{next(_runs)}"
		self.trace = Trace(self.run_id)
		self.network = Network(self.seed, scenario.setting("default_latency_us"), self.run_id)
		self.sip = None
		self.signal = None
		self.venues = {}
		self.agents = {}
		self.events = 0
		self.elapsed_ms = 0
		self.build()

	def build(self):
		s = self.scenario
		if s.sip.enabled:
			latency = s.sip.latency_us if s.sip.latency_us is not None else config.default("sip_latency_us")
			self.sip = SipState(self.network, latency)
		for vc in s.venues:
			self.venues[vc.venue_id] = Venue(vc, self.network, s.instruments, s.setting("l2_depth"), s.setting("generic_participant_id"))
		if s.signal is not None:
			sig = s.signal
			self.signal = SignalProcess(self.network, sig.instrument_id, sig.initial_value, sig.jump_ticks, sig.first_jump_us, sig.interval_us, sig.jitter_us, sig.count, sig.jumps)
		for spec in s.agents:
			self.agents[spec.id] = AGENT_TYPES[spec.type](spec.id, self.network, spec.capabilities, **self.agent_params(spec))
		self.wire()

	def agent_params(self, spec):
		params = dict(spec.params)
		s = self.scenario
		if spec.type == "scalper":
			params.setdefault("markup_ticks", config.default("scalper_markup_ticks"))
		elif spec.type == "fingerprinter":
			params.setdefault("epsilon_us", config.default("fingerprint_epsilon_us"))
			params.setdefault("generic_id", s.setting("generic_participant_id"))
		elif spec.type in ("market_maker", "sniper") and s.signal is not None:
			if params.get("instrument_id", s.signal.instrument_id) == s.signal.instrument_id:
				params.setdefault("initial_value", s.signal.initial_value)
		return params

	def wire(self):
		s = self.scenario
		net = self.network
		for spec in s.agents:
			latency = spec.capabilities.default_latency_us
			for venue_id in self.venues:
				net.add_link(spec.id, venue_id, latency)
				net.add_link(venue_id, spec.id, latency)
			if self.sip is not None and spec.sip:
				net.add_link(self.sip.endpoint_id, spec.id, latency)
				self.sip.subscribe(spec.id)
			if spec.capabilities.direct_feed:
				channels = ("l1", "l2", "prints") if spec.capabilities.feed == "l2" else ("l1", "prints")
				for venue_id in spec.venues if spec.venues is not None else self.venues:
					for channel in channels:
						self.venues[venue_id].subscribe(channel, spec.id)
		if self.sip is not None:
			for venue_id, venue in self.venues.items():
				net.add_link(venue_id, self.sip.endpoint_id, 0)
				net.add_link(self.sip.endpoint_id, venue_id, 0)
				if not venue.config.is_batch:
					self.sip.subscribe(venue_id)
		if self.signal is not None:
			subscribers = s.signal.subscribers if s.signal.subscribers is not None else list(self.agents)
			for endpoint_id in subscribers:
				net.add_link(self.signal.endpoint_id, endpoint_id, 0)
				self.signal.subscribe(endpoint_id)
		for link in s.links:
			net.add_link(link.src, link.dst, link.base_latency_us, link.jitter_us, link.timestamp_noise_us)

	def run(self):
		timer = Timer()
		for venue in self.venues.values():
			venue.start(0)
		if self.signal is not None:
			self.signal.start(0)
		for agent in self.agents.values():
			agent.start(0)
		log.debug(F"{self.run_id}: started in {timer.lap('start')} ms")
		self.events = self.network.scheduler.run_until(self.scenario.duration_us)
		self.elapsed_ms = timer.lap("run")
		log.info(F"{self.run_id}: {self.events} events in {self.elapsed_ms} ms, {len(self.trace)} trace records")
		return self.events

	@property
	def trace_hash(self):
		return self.network.scheduler.trace_hash

	def values(self):
		"""Final marking value per instrument.

		The signal's last value for its instrument, then the scenario's values,
		then the last trade price, then 0.
		"""
		res = {i: 0 for i in self.scenario.instruments}
		for t in self.trace.data("trade"):
			res[t.instrument_id] = t.price
		res.update(self.scenario.values)
		if self.signal is not None:
			res[self.signal.instrument_id] = self.signal.value_at(self.scenario.duration_us)
		return res

	def monitor_settings(self):
		m = self.scenario.monitors
		return MonitorSettings(
			otr_threshold=m.otr_threshold if m.otr_threshold is not None else config.default("otr_threshold"),
			otr_window_us=m.otr_window_us if m.otr_window_us is not None else config.default("otr_window_us"),
			staleness_threshold_us=m.staleness_threshold_us if m.staleness_threshold_us is not None else config.default("staleness_threshold_us"),
			queue_whitelist=tuple(m.queue_whitelist),
			fair_access_groups=tuple(tuple(g) for g in m.fair_access_groups),
			fingerprint_population=tuple(m.fingerprint_population) if m.fingerprint_population else None,
		)

	def finish(self):
		"""Metrics and violations over the finished trace; closes the trace."""
		values = self.values()
		skip = [v.venue_id for v in self.scenario.venues if v.matching_algo is MatchingAlgo.PRO_RATA]
		metrics, violations = build_metrics(self.trace, values, self.monitor_settings(), self.trace_hash, skip)
		self.trace.close()
		return RunResult(self.scenario, self.seed, self.trace, metrics, violations, self.trace_hash, values, self.events, self.elapsed_ms)


def run_scenario(scenario, seed=None):
	sim = Simulation(scenario, seed)
	try:
		sim.run()
	except Exception:
		sim.trace.close()
		raise
	return sim.finish()
