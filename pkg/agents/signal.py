# -*- coding: utf-8 -*-
"""The fundamental value process and the public signal that tracks it."""
import logging
from dataclasses import dataclass

from monitors.records import SignalJump
from monitors.trace import publish
from simnet import Wakeup

log = logging.getLogger("agents.signal")

SIGNAL_ID = "SIGNAL"


@dataclass(frozen=True)
class SignalUpdate:
	instrument_id: str
	value: int
	ts: int

	def summary(self):
		return F"signal {self.instrument_id} {self.value}"


class SignalProcess:
	"""Piecewise-constant value in ticks with seeded jumps.

	Jump k happens at first_jump_us + k * interval_us + Uniform[0, jitter_us];
	its sign is drawn from the signal's own substream. Explicit jumps, given as
	(ts, value) pairs, replace the generated schedule. Each jump is sent to
	every subscriber over its link; the signal is the value itself.
	"""

	def __init__(self, network, instrument_id, initial_value, jump_ticks=3, first_jump_us=25000, interval_us=50000, jitter_us=0, count=0, jumps=None, endpoint_id=SIGNAL_ID):
		self.network = network
		self.instrument_id = instrument_id
		self.initial_value = initial_value
		self.endpoint_id = endpoint_id
		self.subscribers = []
		self.run_id = network.run_id
		if jumps is None:
			jumps = self._generate(network.streams.generator(F"signal:{instrument_id}"), jump_ticks, first_jump_us, interval_us, jitter_us, count)
		self.jumps = sorted((int(ts), int(value)) for ts, value in jumps)
		network.register(endpoint_id, self.on_event)

	def _generate(self, rng, jump_ticks, first_jump_us, interval_us, jitter_us, count):
		res = []
		value = self.initial_value
		for k in range(count):
			ts = first_jump_us + k * interval_us
			if jitter_us:
				ts += int(rng.integers(0, jitter_us + 1))
			sign = 1 if rng.integers(0, 2) else -1
			value = max(value + sign * jump_ticks, jump_ticks)
			res.append((ts, value))
		return res

	def subscribe(self, endpoint_id):
		if endpoint_id not in self.subscribers:
			self.subscribers.append(endpoint_id)

	def start(self, now=0):
		for i, (ts, value) in enumerate(self.jumps):
			self.network.local(self.endpoint_id, max(ts, now), Wakeup("jump", (i,)))

	def value_at(self, ts):
		value = self.initial_value
		for jump_ts, jump_value in self.jumps:
			if jump_ts > ts:
				break
			value = jump_value
		return value

	@property
	def final_value(self):
		return self.jumps[-1][1] if self.jumps else self.initial_value

	def on_event(self, event):
		index = event.payload.data[0]
		ts, value = self.jumps[index]
		old = self.jumps[index - 1][1] if index else self.initial_value
		publish(self.run_id, "observation", SignalJump(event.deliver_at, self.instrument_id, old, value))
		update = SignalUpdate(self.instrument_id, value, event.deliver_at)
		for sub in self.subscribers:
			self.network.send(self.endpoint_id, sub, update, event.deliver_at)
		log.debug(F"value of {self.instrument_id} jumped {old} -> {value}")
