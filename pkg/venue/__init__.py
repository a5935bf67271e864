from simnet.sip import NbboQuote
from .errors import VenueError, MalformedMessage
from .messages import MsgType, ExecStatus, OrderMessage, ExecutionReport, TradePrint, EngineWork
from .config import VenueConfig, PROTECTION_POLICIES
from .lock_cross import (
	Protection, ProtectionDecision, apply_order_protection, day_iso_priority,
	handle_lock_cross, locks_or_crosses, on_unlock,
)
from .venue import Venue
