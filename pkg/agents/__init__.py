from .errors import AgentError, OrderTypeNotPermitted
from .capabilities import AgentCapabilities, LINK_PROFILES, FEEDS
from .latency import LatencyTable
from .signal import SIGNAL_ID, SignalProcess, SignalUpdate
from .base import Agent
from .participants import (
	MarketMaker, ScriptedTrader, ScriptedAction, Broker, ParentOrder, PassiveFlow, Investor,
	broker_route, investor_block,
)
from .attacks import (
	SCALP_TRIGGERS, attack_fingerprint, attack_ping, attack_quote_stuff, attack_snipe, attack_scalp, attack_queue_jump,
	large_buy_printed,
)
from .attackers import Fingerprinter, Pinger, QuoteStuffer, Sniper, Scalper, QueueJumper
