# -*- coding: utf-8 -*-
import dataclasses
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any

from .errors import UnknownEndpoint
from .scheduler import Scheduler
from .streams import Streams

log = logging.getLogger("simnet.network")


@dataclass
class Link:
	"""One-way path between two endpoints.

	Delivery is send time + base + Uniform[0, jitter]. timestamp_noise_us
	perturbs the claimed submit time of order messages by Uniform[-s, +s],
	floored at 0, without touching delivery.
	"""
	src: str
	dst: str
	base_latency_us: int
	jitter_us: int = 0
	timestamp_noise_us: int = 0
	rng: Any = field(default=None, repr=False, compare=False)
	noise_rng: Any = field(default=None, repr=False, compare=False)

	def delay(self):
		if self.jitter_us <= 0:
			return self.base_latency_us
		return self.base_latency_us + int(self.rng.integers(0, self.jitter_us + 1))

	def perturb(self, ts):
		if self.timestamp_noise_us <= 0:
			return ts
		s = self.timestamp_noise_us
		return max(ts + int(self.noise_rng.integers(-s, s + 1)), 0)


class Network:
	"""Endpoints, links and the scheduler they share for one run."""

	def __init__(self, seed=0, default_latency_us=None, run_id="run"):
		self.scheduler = Scheduler()
		self.streams = Streams(seed)
		self.default_latency_us = default_latency_us
		self.run_id = run_id
		self.links = {}
		self.endpoints = {}
		self._ids = itertools.count(1)

	@property
	def now(self):
		return self.scheduler.now

	def next_id(self):
		"""Globally unique order id for this run."""
		return next(self._ids)

	def register(self, endpoint_id, handler):
		self.endpoints[endpoint_id] = handler
		self.scheduler.register(endpoint_id, handler)

	def add_link(self, src, dst, base_latency_us, jitter_us=0, timestamp_noise_us=0):
		link = Link(src, dst, int(base_latency_us), int(jitter_us), int(timestamp_noise_us),
			rng=self.streams.generator(F"link:{src}->{dst}"),
			noise_rng=self.streams.generator(F"noise:{src}->{dst}"))
		self.links[(src, dst)] = link
		return link

	def link(self, src, dst):
		link = self.links.get((src, dst))
		if link is None:
			if self.default_latency_us is None:
				raise UnknownEndpoint(F"no link {src}->{dst}")
			link = self.add_link(src, dst, self.default_latency_us)
		return link

	def send(self, src, dst, payload, now=None):
		"""Schedule delivery of payload over the src->dst link; returns the Event."""
		if src not in self.endpoints:
			raise UnknownEndpoint(src)
		if dst not in self.endpoints:
			raise UnknownEndpoint(dst)
		link = self.link(src, dst)
		sent_at = self.scheduler.now if now is None else now
		if link.timestamp_noise_us and hasattr(payload, "claimed_submit_ts"):
			payload = dataclasses.replace(payload, claimed_submit_ts=link.perturb(payload.claimed_submit_ts))
		return self.scheduler.post(sent_at + link.delay(), src, dst, payload)

	def local(self, endpoint_id, at, payload):
		"""Self-addressed event (timers, bumped engine work)."""
		return self.scheduler.post(at, endpoint_id, endpoint_id, payload)
