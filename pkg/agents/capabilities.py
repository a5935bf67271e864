# -*- coding: utf-8 -*-
"""What an agent can do: how fast it is, what it sees and what it knows."""
from dataclasses import asdict, dataclass

from engine import OrderKind

from .errors import OrderTypeNotPermitted

# default one-way agent <-> venue latency per profile, in microseconds
LINK_PROFILES = {
	"colocated": 20,
	"fast": 100,
	"slow": 1000,
}

FEEDS = ("l2", "l1", "sip")


@dataclass(frozen=True)
class AgentCapabilities:
	link_profile: str = "fast"
	# l2 and l1 are direct venue feeds; sip means consolidated quotes only
	feed: str = "sip"
	processing_rate: int = 0
	knows_hide_and_light: bool = False
	knows_day_iso: bool = False

	@property
	def default_latency_us(self):
		return LINK_PROFILES[self.link_profile]

	@property
	def direct_feed(self):
		return self.feed != "sip"

	def permits(self, kind):
		if kind is OrderKind.HIDE_AND_LIGHT:
			return self.knows_hide_and_light
		if kind is OrderKind.DAY_ISO:
			return self.knows_day_iso
		return True

	def check(self, kind):
		if not self.permits(kind):
			raise OrderTypeNotPermitted(F"{kind.value} orders are not available to this agent")

	@classmethod
	def from_dict(cls, data):
		return cls(**data)

	def to_dict(self):
		return asdict(self)

	def problems(self):
		res = []
		if self.link_profile not in LINK_PROFILES:
			res.append(("link_profile", F"must be one of {', '.join(LINK_PROFILES)}"))
		if self.feed not in FEEDS:
			res.append(("feed", F"must be one of {', '.join(FEEDS)}"))
		if self.processing_rate < 0:
			res.append(("processing_rate", "must not be negative"))
		return res
