# -*- coding: utf-8 -*-
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple


class Property(Enum):
	TRADING_INTEGRITY = "TradingIntegrity"
	FAIR_MARKET_ACCESS = "FairMarketAccess"
	SYMMETRIC_INFORMATION = "SymmetricInformation"
	QUEUE_INTEGRITY = "QueueIntegrity"
	PARTICIPANT_ANONYMITY = "ParticipantAnonymity"
	DATA_CONFIDENTIALITY = "DataConfidentiality"


@dataclass(frozen=True)
class Violation:
	property: Property
	ts: int
	subjects: Tuple = ()
	evidence: dict = field(default_factory=dict, compare=False, hash=False)
	# trace event ids that reproduce it
	event_ids: Tuple[int, ...] = ()

	def to_dict(self):
		return {
			"property": self.property.value,
			"ts": self.ts,
			"subjects": list(self.subjects),
			"evidence": self.evidence,
			"event_ids": list(self.event_ids),
		}
