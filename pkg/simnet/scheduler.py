# -*- coding: utf-8 -*-
import hashlib
import heapq
import logging
from dataclasses import dataclass, field
from typing import Any, Tuple

from .errors import SchedulingInPast, UnknownEndpoint

log = logging.getLogger("simnet.scheduler")
events_log = logging.getLogger("events")


@dataclass(order=True)
class Event:
	deliver_at: int
	seq: int
	src: str = field(compare=False)
	dst: str = field(compare=False)
	payload: Any = field(compare=False, default=None)

	def line(self):
		return F"{self.deliver_at}\t{self.seq}\t{self.src}\t{self.dst}\t{describe(self.payload)}"


@dataclass(frozen=True)
class Wakeup:
	"""Timer payload an entity schedules to itself."""
	tag: str
	data: Tuple = ()

	def summary(self):
		return F"wakeup {self.tag} {self.data}" if self.data else F"wakeup {self.tag}"


def describe(payload):
	if hasattr(payload, "summary"):
		return payload.summary()
	return repr(payload)


class Scheduler:
	"""Single-threaded event loop ordered by (deliver_at, seq).

	Every popped event is folded into a SHA-256 digest of its trace line, so
	two runs can be compared by hash; the same line goes to the events logger
	when that has a handler.
	"""

	def __init__(self):
		self.now = 0
		self.processed = 0
		self._queue = []
		self._seq = 0
		self.handlers = {}
		self._digest = hashlib.sha256()

	def register(self, endpoint_id, handler):
		self.handlers[endpoint_id] = handler

	def next_seq(self):
		self._seq += 1
		return self._seq

	def schedule(self, event):
		if event.deliver_at < self.now:
			raise SchedulingInPast(F"event for {event.dst} at {event.deliver_at} but now is {self.now}")
		heapq.heappush(self._queue, event)
		return event

	def post(self, deliver_at, src, dst, payload):
		return self.schedule(Event(deliver_at, self.next_seq(), src, dst, payload))

	def __len__(self):
		return len(self._queue)

	@property
	def next_time(self):
		return self._queue[0].deliver_at if self._queue else None

	def run_until(self, t_end):
		"""Execute every event due at or before t_end; returns how many ran."""
		count = 0
		trace = bool(events_log.handlers)
		while self._queue and self._queue[0].deliver_at <= t_end:
			event = heapq.heappop(self._queue)
			self.now = event.deliver_at
			line = event.line()
			self._digest.update(line.encode("utf-8"))
			self._digest.update(b"\n")
			if trace:
				events_log.info(line)
			handler = self.handlers.get(event.dst)
			if handler is None:
				raise UnknownEndpoint(event.dst)
			try:
				handler(event)
			except Exception:
				log.exception(F"error handling event {event.seq} for {event.dst}")
				raise
			count += 1
		self.processed += count
		if t_end > self.now:
			self.now = t_end
		return count

	@property
	def trace_hash(self):
		return self._digest.hexdigest()
