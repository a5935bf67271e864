# -*- coding: utf-8 -*-
import logging

from engine import OrderKind, Side, TimeInForce
from engine.views import GENERIC_ID, BookView, QuoteView
from monitors.records import FingerprintGuess, HiddenLiquidityBelief, QueueJumpRecord, ScalpRecord, SnipeCapture
from venue.messages import ExecStatus, TradePrint

from .attacks import (
	SCALP_TRIGGERS, attack_fingerprint, attack_ping, attack_queue_jump, attack_quote_stuff, attack_scalp,
	attack_snipe, best_displayed, large_buy_printed, snipe_exit_price,
)
from .base import Agent
from .errors import AgentError
from .latency import LatencyTable
from .signal import SignalUpdate

log = logging.getLogger("agents.attackers")


class Fingerprinter(Agent):
	"""Learns broker latencies from labelled L2 entries and guesses who is behind anonymous ones."""

	def __init__(self, agent_id, network, capabilities=None, venue_id="", epsilon_us=50, generic_id=GENERIC_ID):
		super().__init__(agent_id, network, capabilities)
		self.venue_id = venue_id
		self.generic_id = generic_id
		self.table = LatencyTable(epsilon_us)
		self.seen = set()
		self.guesses = {}

	def on_market_data(self, data, now):
		if not isinstance(data, BookView) or data.venue_id != self.venue_id:
			return
		for level in data.bids + data.asks:
			for view in level.orders:
				if view.order_id in self.seen:
					continue
				self.seen.add(view.order_id)
				latency = view.listed_ts - view.submitted_ts
				if view.participant_id != self.generic_id:
					self.table.observe(view.participant_id, latency)
					continue
				guess = attack_fingerprint(self.table, latency)
				self.guesses[view.order_id] = guess
				self.observe(FingerprintGuess(now, self.agent_id, self.venue_id, view.order_id, latency, guess))


class Pinger(Agent):
	"""Sends round-lot IOC probes and infers hidden liquidity from its own fills.

	A belief forms at a price once the probes filled there exceed what the
	last public L2 showed at that price.
	"""

	def __init__(self, agent_id, network, capabilities=None, venue_id="", instrument_id="", band=None, round_lot=100, side="sell", interval_us=1000, start_us=0, count=100, enabled=True):
		super().__init__(agent_id, network, capabilities)
		self.venue_id = venue_id
		self.instrument_id = instrument_id
		self.band = tuple(band) if band else None
		self.round_lot = round_lot
		self.side = Side(side) if isinstance(side, str) else side
		self.interval_us = interval_us
		self.start_us = start_us
		self.count = count
		self.enabled = enabled
		self.probes = {}
		self.hits = {}
		self.beliefs = {}

	def start(self, now=0):
		if self.enabled and self.count:
			self.schedule(max(self.start_us, now), "probe", 0)

	def probe_prices(self):
		if self.band is not None:
			return attack_ping(self.instrument_id, self.band, self.round_lot, self.side)
		touch = best_displayed(self.books.get((self.venue_id, self.instrument_id)), self.side.opposite)
		if touch is None:
			return []
		return attack_ping(self.instrument_id, (touch, touch), self.round_lot, self.side)

	def on_timer(self, wakeup, now):
		k = wakeup.data[0]
		probes = self.probe_prices()
		if probes:
			side, price, qty = probes[k % len(probes)]
			msg = self.submit(self.venue_id, self.instrument_id, side, qty, price, tif=TimeInForce.IOC, now=now, routable=False)
			self.probes[msg.order_id] = price
		if k + 1 < self.count:
			self.schedule(now + self.interval_us, "probe", k + 1)

	def public_qty(self, price):
		view = self.books.get((self.venue_id, self.instrument_id))
		if view is None:
			return 0
		level = view.level(self.side.opposite, price)
		return level.qty if level is not None else 0

	def on_report(self, report, now):
		if report.status is not ExecStatus.FILL or report.order_id not in self.probes:
			return
		price = report.price
		self.hits[price] = self.hits.get(price, 0) + report.qty
		displayed = self.public_qty(price)
		if self.hits[price] > displayed and price not in self.beliefs:
			belief = HiddenLiquidityBelief(now, self.agent_id, self.venue_id, self.instrument_id, self.side.opposite.value, price, self.hits[price], displayed)
			self.beliefs[price] = belief
			self.observe(belief)
			log.debug(F"{self.agent_id}: hidden {belief.side} liquidity at {price} after {self.hits[price]} filled against {displayed} shown")


class QuoteStuffer(Agent):
	"""Floods a venue with submit/cancel pairs away from the touch."""

	def __init__(self, agent_id, network, capabilities=None, venue_id="", instrument_id="", side="buy", price=1, qty=100, rate_per_ms=25, duration_us=100000, start_us=0):
		super().__init__(agent_id, network, capabilities)
		self.venue_id = venue_id
		self.instrument_id = instrument_id
		self.side = Side(side) if isinstance(side, str) else side
		self.price = price
		self.qty = qty
		self.plan = attack_quote_stuff(venue_id, rate_per_ms, duration_us, start_us)
		self.last_order = None

	def start(self, now=0):
		if self.plan:
			self.schedule(max(self.plan[0].at, now), "stuff", 0)

	def on_timer(self, wakeup, now):
		i = wakeup.data[0]
		if self.plan[i].action == "new":
			self.last_order = self.submit(self.venue_id, self.instrument_id, self.side, self.qty, self.price, now=now, routable=False).order_id
		elif self.last_order is not None:
			self.cancel(self.last_order, now)
		if i + 1 < len(self.plan):
			self.schedule(max(self.plan[i + 1].at, now), "stuff", i + 1)


class Sniper(Agent):
	"""Picks off quotes left stale by a signal jump, then unwinds one tick inside the new value."""

	def __init__(self, agent_id, network, capabilities=None, instrument_id="", venues=(), initial_value=100):
		super().__init__(agent_id, network, capabilities)
		self.instrument_id = instrument_id
		self.venues = list(venues)
		self.value = initial_value
		self.pending = {}
		self.captures = []

	def on_market_data(self, data, now):
		if not isinstance(data, SignalUpdate) or data.instrument_id != self.instrument_id:
			return
		quotes = [self.quotes[(v, self.instrument_id)] for v in self.venues if (v, self.instrument_id) in self.quotes]
		for intent in attack_snipe(quotes, self.value, data.value):
			msg = self.submit(intent.venue_id, self.instrument_id, intent.side, intent.qty, intent.price, tif=TimeInForce.IOC, now=now, routable=False)
			self.pending[msg.order_id] = (intent, data.ts, data.value)
		self.value = data.value

	def on_report(self, report, now):
		if report.status is not ExecStatus.FILL or report.order_id not in self.pending:
			return
		intent, jump_ts, value = self.pending[report.order_id]
		capture = SnipeCapture(now, self.agent_id, intent.venue_id, self.instrument_id, intent.side.value, report.price, report.qty, value, jump_ts)
		self.captures.append(capture)
		self.observe(capture)
		self.submit(intent.venue_id, self.instrument_id, intent.side.opposite, report.qty, snipe_exit_price(intent.side, value), now=now, routable=False)


class Scalper(Agent):
	"""Front-runs a routed remainder: buys the away venue's offer and re-offers it marked up.

	With the ping trigger it rests a small sell at watch_venue and treats that
	order filling as the sign of a large buyer; with the print trigger it
	watches watch_venue's tape for a large buy instead.
	"""

	def __init__(self, agent_id, network, capabilities=None, instrument_id="", watch_venue="", target_venue="", trigger="ping", ping_price=None, ping_qty=100, min_print_qty=10000, markup_ticks=1, max_scalps=1):
		super().__init__(agent_id, network, capabilities)
		if trigger not in SCALP_TRIGGERS:
			raise AgentError(F"unknown scalp trigger {trigger}")
		if trigger == "ping" and ping_price is None:
			raise AgentError(F"{agent_id}: the ping trigger needs a ping_price")
		self.instrument_id = instrument_id
		self.watch_venue = watch_venue
		self.target_venue = target_venue
		self.trigger = trigger
		self.ping_price = ping_price
		self.ping_qty = ping_qty
		self.min_print_qty = min_print_qty
		self.markup_ticks = markup_ticks
		self.max_scalps = max_scalps
		self.scalps = 0
		self.pings = set()
		self.pending = set()

	def start(self, now=0):
		if self.trigger == "ping":
			self.schedule(now, "ping")

	def on_timer(self, wakeup, now):
		msg = self.submit(self.watch_venue, self.instrument_id, Side.SELL, self.ping_qty, self.ping_price, now=now, routable=False)
		self.pings.add(msg.order_id)

	def on_market_data(self, data, now):
		if self.trigger != "print" or not isinstance(data, TradePrint):
			return
		if data.venue_id != self.watch_venue or data.instrument_id != self.instrument_id:
			return
		if large_buy_printed(data, self.min_print_qty):
			self.detected(HiddenLiquidityBelief(now, self.agent_id, data.venue_id, self.instrument_id, Side.BUY.value, data.price, data.qty, 0), now)

	def on_report(self, report, now):
		if report.status is not ExecStatus.FILL:
			return
		if report.order_id in self.pings:
			self.detected(HiddenLiquidityBelief(now, self.agent_id, report.venue_id, self.instrument_id, Side.BUY.value, report.price, report.qty, 0), now)
		elif report.order_id in self.pending:
			ask = report.price + self.markup_ticks
			self.observe(ScalpRecord(now, self.agent_id, report.venue_id, self.instrument_id, report.qty, report.price, ask))
			self.submit(report.venue_id, self.instrument_id, Side.SELL, report.qty, ask, now=now, routable=False)

	def detected(self, belief, now):
		"""A large buyer is in the market: race its routed remainder to target_venue."""
		if self.scalps >= self.max_scalps:
			return
		intent = attack_scalp(belief, self.quotes.get((self.target_venue, self.instrument_id)))
		if intent is None:
			return
		self.observe(belief)
		self.scalps += 1
		msg = self.submit(intent.venue_id, self.instrument_id, Side.BUY, intent.qty, intent.price, tif=TimeInForce.IOC, now=now, routable=False)
		self.pending.add(msg.order_id)
		log.debug(F"{self.agent_id}: buyer at {belief.venue_id} ({self.trigger}), buying {intent.qty} at {intent.venue_id}")


class QueueJumper(Agent):
	"""Places an order meant to overtake earlier orders at the same price.

	hide_and_light and limit modes fire at a fixed time; day_iso mode fires
	when the trigger venue's direct L1 moves to the target price.
	"""

	def __init__(self, agent_id, network, capabilities=None, mode="hide_and_light", venue_id="", instrument_id="", side="buy", price=0, qty=100, at=None, trigger_venue=None, sweep=False):
		super().__init__(agent_id, network, capabilities)
		self.mode = mode
		self.kind = attack_queue_jump(mode, self.caps)
		self.venue_id = venue_id
		self.instrument_id = instrument_id
		self.side = Side(side) if isinstance(side, str) else side
		self.price = price
		self.qty = qty
		self.at = at
		self.trigger_venue = trigger_venue
		self.sweep = sweep
		self.fired = False

	def start(self, now=0):
		if self.at is not None:
			self.schedule(max(self.at, now), "fire")

	def on_timer(self, wakeup, now):
		self.fire(now)

	def on_market_data(self, data, now):
		if self.fired or self.trigger_venue is None:
			return
		if not isinstance(data, QuoteView) or data.venue_id != self.trigger_venue or data.instrument_id != self.instrument_id:
			return
		away = data.ask if self.side is Side.BUY else data.bid
		if away is None:
			return
		if (away <= self.price) if self.side is Side.BUY else (away >= self.price):
			self.fire(now, data)

	def fire(self, now, trigger=None):
		if self.fired:
			return
		self.fired = True
		msg = self.submit(self.venue_id, self.instrument_id, self.side, self.qty, self.price, kind=self.kind, now=now, routable=False)
		self.observe(QueueJumpRecord(now, self.agent_id, self.venue_id, self.mode, msg.order_id, self.price))
		if self.sweep and trigger is not None:
			size = trigger.ask_qty if self.side is Side.BUY else trigger.bid_qty
			self.submit(trigger.venue_id, self.instrument_id, self.side, size, self.price, kind=OrderKind.DAY_ISO, tif=TimeInForce.IOC, now=now, routable=False)
