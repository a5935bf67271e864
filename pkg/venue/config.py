# -*- coding: utf-8 -*-
from dataclasses import dataclass, fields

from engine import MatchingAlgo

PROTECTION_POLICIES = ("route", "reject")


@dataclass
class VenueConfig:
	venue_id: str
	tick_size: float = 0.01
	round_lot: int = 100
	matching_algo: MatchingAlgo = MatchingAlgo.FIFO
	speed_bump_in_us: int = 0
	speed_bump_out_us: int = 0
	speed_bump_jitter_us: int = 0
	bump_exempt_cancels: bool = False
	bump_exempt_routed: bool = True
	batch_interval_us: int = 0
	# 0 publishes on every change
	l1_interval_us: int = 0
	l2_interval_us: int = 0
	exec_report_immediate: bool = True
	dark: bool = False
	protection_policy: str = "route"
	max_msgs_per_ms: int = 0
	engine_msgs_per_ms: int = 0
	pro_rata_min_alloc: int = 0
	pro_rata_max_alloc: int = 0

	@property
	def is_batch(self):
		return self.batch_interval_us > 0

	@classmethod
	def from_dict(cls, data):
		"""Build from a scenario mapping; unknown keys raise TypeError like the constructor."""
		data = dict(data)
		algo = data.get("matching_algo")
		if isinstance(algo, str):
			data["matching_algo"] = MatchingAlgo(algo)
		return cls(**data)

	def to_dict(self):
		res = {}
		for f in fields(self):
			value = getattr(self, f.name)
			res[f.name] = value.value if isinstance(value, MatchingAlgo) else value
		return res

	def problems(self):
		"""(field, message) pairs for every invalid setting."""
		res = []
		if not self.venue_id:
			res.append(("venue_id", "must not be empty"))
		if self.tick_size <= 0:
			res.append(("tick_size", "must be positive"))
		if self.round_lot <= 0:
			res.append(("round_lot", "must be positive"))
		for name in ("speed_bump_in_us", "speed_bump_out_us", "speed_bump_jitter_us", "batch_interval_us", "l1_interval_us", "l2_interval_us", "max_msgs_per_ms", "engine_msgs_per_ms", "pro_rata_min_alloc", "pro_rata_max_alloc"):
			if getattr(self, name) < 0:
				res.append((name, "must not be negative"))
		if self.protection_policy not in PROTECTION_POLICIES:
			res.append(("protection_policy", F"must be one of {', '.join(PROTECTION_POLICIES)}"))
		if self.pro_rata_max_alloc and self.pro_rata_min_alloc > self.pro_rata_max_alloc:
			res.append(("pro_rata_min_alloc", "exceeds pro_rata_max_alloc"))
		return res
