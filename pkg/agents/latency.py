# -*- coding: utf-8 -*-
from dataclasses import dataclass, field


@dataclass
class LatencyEstimate:
	total: int = 0
	count: int = 0

	@property
	def mean(self):
		return self.total / self.count if self.count else None


@dataclass
class LatencyTable:
	"""Running mean of listing time minus claimed submit time, per broker."""
	epsilon_us: int = 50
	entries: dict = field(default_factory=dict)

	def observe(self, broker_id, latency_us):
		entry = self.entries.setdefault(broker_id, LatencyEstimate())
		entry.total += latency_us
		entry.count += 1

	def estimate(self, broker_id):
		entry = self.entries.get(broker_id)
		return entry.mean if entry is not None else None

	def samples(self, broker_id):
		entry = self.entries.get(broker_id)
		return entry.count if entry is not None else 0

	def candidates(self, latency_us):
		return sorted(b for b, e in self.entries.items() if e.count and abs(e.mean - latency_us) <= self.epsilon_us)

	def __len__(self):
		return len(self.entries)
