# -*- coding: utf-8 -*-
"""Honest participants: market makers, scripted traders, brokers and block investors."""
import logging
import math
from dataclasses import dataclass
from typing import Optional

from engine import OrderKind, Replenish, Side, TimeInForce

from .base import Agent
from .errors import AgentError
from .signal import SignalUpdate

log = logging.getLogger("agents.participants")


class MarketMaker(Agent):
	"""Quotes value +/- half_spread and reprices on every signal it processes.

	Repricing is cancel then re-post, so the old quotes stay live until the
	cancels reach the venue.
	"""

	def __init__(self, agent_id, network, capabilities=None, venue_id="", instrument_id="", initial_value=100, half_spread=1, size=100):
		super().__init__(agent_id, network, capabilities)
		self.venue_id = venue_id
		self.instrument_id = instrument_id
		self.value = initial_value
		self.half_spread = half_spread
		self.size = size
		self.bid_id = None
		self.ask_id = None
		self.reprices = 0

	def start(self, now=0):
		self.requote(self.value, now)

	def requote(self, value, now):
		for order_id in (self.bid_id, self.ask_id):
			if order_id is not None and order_id in self.live:
				self.cancel(order_id, now)
		self.value = value
		bid = self.submit(self.venue_id, self.instrument_id, Side.BUY, self.size, value - self.half_spread, now=now, routable=False)
		ask = self.submit(self.venue_id, self.instrument_id, Side.SELL, self.size, value + self.half_spread, now=now, routable=False)
		self.bid_id, self.ask_id = bid.order_id, ask.order_id

	def on_market_data(self, data, now):
		if isinstance(data, SignalUpdate) and data.instrument_id == self.instrument_id and data.value != self.value:
			self.reprices += 1
			self.requote(data.value, now)


@dataclass(frozen=True)
class ScriptedAction:
	at: int
	action: str = "new"
	venue: str = ""
	instrument: str = ""
	side: Optional[Side] = None
	kind: OrderKind = OrderKind.LIMIT
	price: Optional[int] = None
	qty: int = 0
	tif: TimeInForce = TimeInForce.DAY
	expire_at: Optional[int] = None
	display_size: int = 0
	replenish: Replenish = Replenish.FIXED
	discretion: int = 0
	anonymous: bool = False
	routable: bool = True
	ref: str = ""
	new_price: Optional[int] = None
	new_qty: Optional[int] = None

	@classmethod
	def from_dict(cls, data):
		data = dict(data)
		if data.get("action", "new") not in ("new", "cancel", "modify"):
			raise AgentError(F"unknown action {data['action']}")
		for key, enum in (("side", Side), ("kind", OrderKind), ("tif", TimeInForce), ("replenish", Replenish)):
			if isinstance(data.get(key), str):
				data[key] = enum(data[key])
		return cls(**data)


class ScriptedTrader(Agent):
	"""Replays a fixed list of timed actions.

	new actions may name a ref so later cancel or modify actions can point
	at the order. With no actions the agent only consumes market data.
	"""

	def __init__(self, agent_id, network, capabilities=None, actions=()):
		super().__init__(agent_id, network, capabilities)
		self.actions = [a if isinstance(a, ScriptedAction) else ScriptedAction.from_dict(a) for a in actions]
		self.refs = {}

	def start(self, now=0):
		for i, action in enumerate(self.actions):
			self.schedule(max(action.at, now), "action", i)

	def on_timer(self, wakeup, now):
		action = self.actions[wakeup.data[0]]
		if action.action == "new":
			msg = self.submit(
				action.venue, action.instrument, action.side, action.qty, action.price,
				kind=action.kind, tif=action.tif, now=now,
				expire_at=action.expire_at,
				display_size=action.display_size,
				replenish=action.replenish,
				discretion=action.discretion,
				anonymous=action.anonymous,
				routable=action.routable,
			)
			if action.ref:
				self.refs[action.ref] = msg.order_id
			return
		order_id = self.refs.get(action.ref)
		if order_id is None:
			log.warning(F"{self.agent_id}: no order named {action.ref}")
			return
		if action.action == "cancel":
			self.cancel(order_id, now)
		else:
			self.modify(order_id, action.new_price, action.new_qty, now)


def broker_route(side, qty, limit, quotes, venues):
	"""Pick the venue for a parent order from the broker's current quotes.

	quotes maps venue_id to a QuoteView (possibly stale). The venue with the
	best opposite price that the limit reaches wins, then the larger size,
	then the lower venue id. With no usable quote the first venue is used.
	"""
	best = None
	for venue_id in venues:
		q = quotes.get(venue_id)
		if q is None:
			continue
		price, size = (q.ask, q.ask_qty) if side is Side.BUY else (q.bid, q.bid_qty)
		if price is None:
			continue
		if limit is not None and (price > limit if side is Side.BUY else price < limit):
			continue
		key = (price if side is Side.BUY else -price, -size, venue_id)
		if best is None or key < best[0]:
			best = (key, venue_id)
	if best is None:
		return venues[0]
	return best[1]


@dataclass(frozen=True)
class ParentOrder:
	at: int
	instrument: str
	side: Side
	qty: int
	limit: Optional[int] = None

	@classmethod
	def from_dict(cls, data):
		data = dict(data)
		data["side"] = Side(data["side"])
		return cls(**data)


@dataclass(frozen=True)
class PassiveFlow:
	"""Periodic resting orders, every anonymous_every-th one anonymous."""
	venue: str
	instrument: str
	price: int
	side: Side = Side.BUY
	qty: int = 100
	interval_us: int = 1000
	count: int = 0
	start_us: int = 0
	anonymous_every: int = 2
	cancel_after_us: int = 20000

	@classmethod
	def from_dict(cls, data):
		data = dict(data)
		if isinstance(data.get("side"), str):
			data["side"] = Side(data["side"])
		return cls(**data)


class Broker(Agent):
	"""Routes parent orders for its clients and optionally posts a passive flow."""

	def __init__(self, agent_id, network, capabilities=None, venues=(), parents=(), flow=None):
		super().__init__(agent_id, network, capabilities)
		if not venues:
			raise AgentError(F"broker {agent_id} has no venues")
		self.venues = list(venues)
		self.parents = [p if isinstance(p, ParentOrder) else ParentOrder.from_dict(p) for p in parents]
		self.flow = flow if flow is None or isinstance(flow, PassiveFlow) else PassiveFlow.from_dict(flow)
		self.children = {}
		self.flow_sent = 0

	def start(self, now=0):
		for i, parent in enumerate(self.parents):
			self.schedule(max(parent.at, now), "parent", i)
		if self.flow is not None and self.flow.count:
			self.schedule(max(self.flow.start_us, now), "flow")

	def venue_quotes(self, instrument_id):
		quotes = {}
		cq = self.nbbo.get(instrument_id)
		if cq is not None:
			quotes.update({q.venue_id: q for q in cq.venue_quotes})
		for (venue_id, inst), q in self.quotes.items():
			if inst == instrument_id:
				quotes[venue_id] = q
		return quotes

	def on_timer(self, wakeup, now):
		if wakeup.tag == "parent":
			parent = self.parents[wakeup.data[0]]
			venue_id = broker_route(parent.side, parent.qty, parent.limit, self.venue_quotes(parent.instrument), self.venues)
			kind = OrderKind.MARKET if parent.limit is None else OrderKind.LIMIT
			msg = self.submit(venue_id, parent.instrument, parent.side, parent.qty, parent.limit, kind=kind, now=now)
			log.debug(F"{self.agent_id}: parent {wakeup.data[0]} for {parent.qty} sent to {venue_id} as {msg.order_id}")
		elif wakeup.tag == "flow":
			flow = self.flow
			anonymous = flow.anonymous_every > 0 and self.flow_sent % flow.anonymous_every == flow.anonymous_every - 1
			msg = self.submit(flow.venue, flow.instrument, flow.side, flow.qty, flow.price, now=now, anonymous=anonymous, routable=False)
			self.flow_sent += 1
			if flow.cancel_after_us:
				self.schedule(now + flow.cancel_after_us, "cancel", msg.order_id)
			if self.flow_sent < flow.count:
				self.schedule(now + flow.interval_us, "flow")
		elif wakeup.tag == "cancel":
			self.cancel(wakeup.data[0], now)

	def on_report(self, report, now):
		if report.child_order_id is not None:
			self.children[report.child_order_id] = report.order_id
			log.debug(F"{self.agent_id}: order {report.order_id} routed on to {report.routed_to} as {report.child_order_id}")


@dataclass(frozen=True)
class PlannedOrder:
	at: int
	kind: OrderKind
	qty: int
	display_size: int = 0


def investor_block(total_qty, style="iceberg", display_size=1000, slice_qty=1000, interval_us=1000, start_us=0):
	"""Plan how a large order is worked.

	iceberg: one reserve order showing display_size. child_slices: limit
	orders of slice_qty, one every interval_us, until the total is covered.
	"""
	if total_qty <= 0:
		return []
	if style == "iceberg":
		return [PlannedOrder(start_us, OrderKind.RESERVE, total_qty, min(display_size, total_qty))]
	if style == "child_slices":
		count = int(math.ceil(total_qty / slice_qty))
		res = []
		for k in range(count):
			res.append(PlannedOrder(start_us + k * interval_us, OrderKind.LIMIT, min(slice_qty, total_qty - k * slice_qty)))
		return res
	raise AgentError(F"unknown block style {style}")


class Investor(Agent):
	"""Works one large block through investor_block; stops slicing once the total is filled."""

	def __init__(self, agent_id, network, capabilities=None, venue_id="", instrument_id="", side=Side.BUY, price=None, total_qty=0, style="iceberg", display_size=1000, slice_qty=1000, interval_us=1000, start_us=0, replenish=Replenish.FIXED):
		super().__init__(agent_id, network, capabilities)
		self.venue_id = venue_id
		self.instrument_id = instrument_id
		self.side = Side(side) if isinstance(side, str) else side
		self.price = price
		self.total_qty = total_qty
		self.replenish = Replenish(replenish) if isinstance(replenish, str) else replenish
		self.plan = investor_block(total_qty, style, display_size, slice_qty, interval_us, start_us)

	def start(self, now=0):
		for i, planned in enumerate(self.plan):
			self.schedule(max(planned.at, now), "slice", i)

	@property
	def done_qty(self):
		return sum(self.filled.values())

	def on_timer(self, wakeup, now):
		if self.done_qty >= self.total_qty:
			return
		planned = self.plan[wakeup.data[0]]
		extra = {}
		if planned.kind is OrderKind.RESERVE:
			extra = {"display_size": planned.display_size, "replenish": self.replenish}
		self.submit(self.venue_id, self.instrument_id, self.side, planned.qty, self.price, kind=planned.kind, now=now, routable=False, **extra)
