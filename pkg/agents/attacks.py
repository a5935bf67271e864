# -*- coding: utf-8 -*-
"""Decision rules of the predatory strategies.

Each function is pure: it takes what the attacker currently knows and says
what to send. The agents in agents.attackers wire them to market data.
"""
from dataclasses import dataclass
from typing import Optional

from engine import OrderKind, Side

from .errors import AgentError


@dataclass(frozen=True)
class OrderIntent:
	venue_id: str
	side: Side
	price: int
	qty: int


def attack_fingerprint(table, observed_latency_us):
	"""The one broker whose latency estimate is within epsilon, else None."""
	candidates = table.candidates(observed_latency_us)
	if len(candidates) != 1:
		return None
	return candidates[0]


def attack_ping(instrument_id, band, round_lot, side=Side.SELL):
	"""One probe per price in band, most passive first.

	band is (low, high) in ticks. Sell probes walk down from high and buy
	probes walk up from low, each a round lot.
	"""
	low, high = band
	if low > high:
		raise AgentError(F"empty ping band for {instrument_id}: {low} > {high}")
	prices = range(high, low - 1, -1) if side is Side.SELL else range(low, high + 1)
	return [(side, p, round_lot) for p in prices]


@dataclass(frozen=True)
class StuffAction:
	at: int
	action: str


def attack_quote_stuff(venue_id, rate_per_ms, duration_us, start_us=0):
	"""Alternating submit/cancel times at rate_per_ms messages per millisecond."""
	if rate_per_ms <= 0 or duration_us <= 0:
		return []
	period = 1000 / rate_per_ms
	count = int(duration_us * rate_per_ms // 1000)
	return [StuffAction(start_us + int(round(k * period)), "new" if k % 2 == 0 else "cancel") for k in range(count)]


def attack_snipe(quotes, old_value, new_value):
	"""IOC intents against quotes left stale by a value jump.

	After an upward jump every ask below new_value - 1 is bought; after a
	downward jump every bid above new_value + 1 is sold. new_value -/+ 1 is
	where the attacker exits, so each intent is profitable if both legs fill.
	"""
	res = []
	if new_value == old_value:
		return res
	for q in sorted(quotes, key=lambda q: q.venue_id):
		if new_value > old_value and q.ask is not None and q.ask_qty > 0 and q.ask < new_value - 1:
			res.append(OrderIntent(q.venue_id, Side.BUY, q.ask, q.ask_qty))
		elif new_value < old_value and q.bid is not None and q.bid_qty > 0 and q.bid > new_value + 1:
			res.append(OrderIntent(q.venue_id, Side.SELL, q.bid, q.bid_qty))
	return res


def snipe_exit_price(side, new_value):
	"""Where a sniper unwinds: one tick inside the new value."""
	return new_value - 1 if side is Side.BUY else new_value + 1


SCALP_TRIGGERS = ("ping", "print")


def large_buy_printed(trade_print, min_print_qty):
	return trade_print.aggressor_side is Side.BUY and trade_print.qty >= min_print_qty


def attack_scalp(belief, away_quote):
	"""Buy everything displayed away once a large buyer has been detected.

	belief is what the attacker learned about the buyer, normally from its
	ping filling. Returns an OrderIntent for the away venue's displayed ask,
	or None when no buyer was detected or nothing is offered.
	"""
	if belief is None or belief.side != Side.BUY.value:
		return None
	if away_quote is None or away_quote.ask is None or away_quote.ask_qty <= 0:
		return None
	return OrderIntent(away_quote.venue_id, Side.BUY, away_quote.ask, away_quote.ask_qty)


QUEUE_JUMP_MODES = {
	"hide_and_light": OrderKind.HIDE_AND_LIGHT,
	"day_iso": OrderKind.DAY_ISO,
	"limit": OrderKind.LIMIT,
}


def attack_queue_jump(mode, capabilities):
	"""Order kind for a queue-jump mode; raises OrderTypeNotPermitted when the attacker does not know it."""
	kind = QUEUE_JUMP_MODES.get(mode)
	if kind is None:
		raise AgentError(F"unknown queue jump mode {mode}")
	capabilities.check(kind)
	return kind


def best_displayed(book_view, side) -> Optional[int]:
	if book_view is None:
		return None
	levels = book_view.bids if side is Side.BUY else book_view.asks
	return levels[0].price if levels else None
