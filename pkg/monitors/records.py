# -*- coding: utf-8 -*-
"""Records that venues and agents publish for the trace.

Trades, book events and execution reports reuse their own types; the
classes here cover gateway receipts, feed publications and what agents
observe or infer.
"""
from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass(frozen=True)
class GatewayRecord:
	ts: int
	venue_id: str
	participant_id: str
	msg_type: str
	order_id: int
	accepted: bool = True
	reason: str = ""
	order_kind: str = ""
	anonymous: bool = False
	claimed_submit_ts: int = 0
	effective_ts: int = 0
	routed_from: Optional[str] = None


@dataclass(frozen=True)
class FeedRecord:
	ts: int
	venue_id: str
	instrument_id: str
	channel: str
	recipients: int
	trade_ids: Tuple[int, ...] = ()


@dataclass(frozen=True)
class StalenessSample:
	ts: int
	participant_id: str
	staleness_us: int
	backlog: int = 0


@dataclass(frozen=True)
class HiddenLiquidityBelief:
	ts: int
	participant_id: str
	venue_id: str
	instrument_id: str
	side: str
	price: int
	filled_qty: int
	displayed_qty: int


@dataclass(frozen=True)
class FingerprintGuess:
	ts: int
	participant_id: str
	venue_id: str
	order_id: int
	observed_latency_us: int
	guess: Optional[str]


@dataclass(frozen=True)
class SnipeCapture:
	ts: int
	participant_id: str
	venue_id: str
	instrument_id: str
	side: str
	stale_price: int
	qty: int
	fair_value: int
	jump_ts: int


@dataclass(frozen=True)
class ScalpRecord:
	ts: int
	participant_id: str
	venue_id: str
	instrument_id: str
	bought_qty: int
	buy_price: int
	ask_price: int


@dataclass(frozen=True)
class SignalJump:
	ts: int
	instrument_id: str
	old_value: int
	new_value: int


@dataclass(frozen=True)
class QueueJumpRecord:
	ts: int
	participant_id: str
	venue_id: str
	mode: str
	order_id: int
	price: int
