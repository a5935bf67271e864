# -*- coding: utf-8 -*-
import logging
import numpy as np
from sortedcontainers import SortedDict, SortedKeyList

from .orders import BookEvent, DisplayClass, MatchingAlgo, Side, rank_key

log = logging.getLogger("engine.book")


class PriceLevel:
	"""All resting orders at one price on one side, kept in rank order."""

	def __init__(self, price):
		self.price = price
		self.orders = SortedKeyList(key=rank_key)

	def __len__(self):
		return len(self.orders)

	def __iter__(self):
		return iter(self.orders)

	def __bool__(self):
		return len(self.orders) > 0

	def add(self, order):
		self.orders.add(order)

	def remove(self, order):
		self.orders.remove(order)

	@property
	def head(self):
		return self.orders[0]

	@property
	def displayed_qty(self):
		return sum(o.displayed_qty for o in self.orders if o.display_class is DisplayClass.LIT)

	def members(self, display_class):
		return [o for o in self.orders if o.display_class is display_class]


class OrderBook:
	"""Two-sided book for one instrument at one venue.

	Bids are keyed by negated price so index 0 is always the best level on
	either side. The journal collects BookEvent and Trade records, in the
	order they happened, until the owning venue drains it.
	"""

	def __init__(self, instrument_id, venue_id="", algo=MatchingAlgo.FIFO, round_lot=100, pro_rata_min_alloc=0, pro_rata_max_alloc=0, rng_for=None):
		self.instrument_id = instrument_id
		self.venue_id = venue_id
		self.algo = algo
		self.round_lot = round_lot
		self.pro_rata_min_alloc = pro_rata_min_alloc
		self.pro_rata_max_alloc = pro_rata_max_alloc
		self.bids = SortedDict(lambda k: -k)
		self.asks = SortedDict()
		self.orders = {}
		self.seen_ids = set()
		self.auction_market_orders = []
		self.last_trade_price = None
		self.seq_counter = 0
		self.trade_counter = 0
		self.journal = []
		# (side, price) levels where a Day ISO already took the head slot
		self.iso_levels = set()
		self._rng_for = rng_for
		self._rngs = {}

	def __contains__(self, order_id):
		return order_id in self.orders

	def next_seq(self):
		self.seq_counter += 1
		return self.seq_counter

	def next_trade_id(self):
		self.trade_counter += 1
		return self.trade_counter

	def stamp(self, order, now):
		order.entry_ts = now
		order.entry_seq = self.next_seq()

	def side(self, side):
		return self.bids if side is Side.BUY else self.asks

	def best_level(self, side):
		levels = self.side(side)
		if not levels:
			return None
		return levels.peekitem(0)[1]

	def best_price(self, side):
		level = self.best_level(side)
		return level.price if level is not None else None

	def best_displayed_price(self, side):
		for price, level in self.side(side).items():
			if level.displayed_qty > 0:
				return price
		return None

	def resting(self):
		"""Resting orders, bids then asks, each in rank order."""
		res = []
		for levels in (self.bids, self.asks):
			for level in levels.values():
				res.extend(level.orders)
		return res

	def rng(self, order):
		"""Per-order substream for random reserve refills."""
		if order.order_id not in self._rngs:
			if self._rng_for is None:
				self._rngs[order.order_id] = np.random.default_rng(order.order_id)
			else:
				self._rngs[order.order_id] = self._rng_for("order:%s:%d" % (self.venue_id, order.order_id))
		return self._rngs[order.order_id]

	# low-level mutation; callers own stamping and journaling order

	def add(self, order):
		levels = self.side(order.side)
		level = levels.get(order.limit_price)
		if level is None:
			level = PriceLevel(order.limit_price)
			levels[order.limit_price] = level
		level.add(order)
		self.orders[order.order_id] = order

	def detach(self, order):
		levels = self.side(order.side)
		level = levels[order.limit_price]
		level.remove(order)
		if not level:
			del levels[order.limit_price]
		del self.orders[order.order_id]

	def rest(self, order, now, reason="insert"):
		self.add(order)
		self.record("rest", reason, order, now)

	def remove(self, order, now, reason):
		self.detach(order)
		self._rngs.pop(order.order_id, None)
		self.record("remove", reason, order, now)

	def rerank(self, order, now, reason, fresh=True, price=None, mutate=None):
		"""Pull an order out, change it, and put it back.

		fresh=True gives it a new (entry_ts, entry_seq), i.e. the back of its
		class at the new price.
		"""
		self.detach(order)
		if price is not None:
			order.limit_price = price
		if mutate is not None:
			mutate(order)
		if fresh:
			self.stamp(order, now)
		self.add(order)
		self.record("rerank", reason, order, now)

	def record(self, action, reason, order, now):
		self.journal.append(BookEvent(
			ts=now,
			venue_id=self.venue_id,
			instrument_id=self.instrument_id,
			action=action,
			reason=reason,
			order_id=order.order_id,
			participant_id=order.participant_id,
			side=order.side,
			order_kind=order.kind,
			price=order.limit_price,
			ref_price=order.original_price,
			display_class=order.display_class,
			entry_ts=order.entry_ts,
			entry_seq=order.entry_seq,
			open_qty=order.open_qty,
			displayed_qty=order.displayed_qty,
			hidden_liquidity=order.has_hidden_liquidity,
		))

	def drain_journal(self):
		events, self.journal = self.journal, []
		return events

	def is_empty(self):
		return not self.bids and not self.asks and not self.auction_market_orders
