# -*- coding: utf-8 -*-
import math
from collections import deque


class ConsumerModel:
	"""Single-server queue for a participant's market-data processing.

	processing_rate is messages per millisecond; 0 means instantaneous.
	Staleness is now minus the venue timestamp of the newest update fully
	processed.
	"""

	def __init__(self, participant_id, processing_rate=0):
		self.participant_id = participant_id
		self.processing_rate = processing_rate
		self.busy_until = 0
		self.pending = deque()
		self.newest_ts = None
		self.processed = 0

	@property
	def service_us(self):
		if not self.processing_rate or self.processing_rate <= 0:
			return 0
		return int(math.ceil(1000 / self.processing_rate))

	def ingest(self, update_ts, now):
		"""Queue one update that reached the participant at now; returns when it is processed."""
		start = max(now, self.busy_until)
		done = start + self.service_us
		self.busy_until = done
		self.pending.append((done, update_ts))
		return done

	def complete(self, now):
		while self.pending and self.pending[0][0] <= now:
			done, ts = self.pending.popleft()
			self.processed += 1
			if self.newest_ts is None or ts > self.newest_ts:
				self.newest_ts = ts

	def backlog(self, now):
		self.complete(now)
		return len(self.pending)

	def staleness(self, now):
		self.complete(now)
		if self.newest_ts is None:
			return None
		return now - self.newest_ts


def consumer_ingest(model, updates, now):
	"""updates: iterable of venue timestamps reaching the participant at now."""
	return [model.ingest(ts, now) for ts in updates]


def consumer_staleness(model, now):
	return model.staleness(now)
