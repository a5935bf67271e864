# -*- coding: utf-8 -*-
"""Naive matcher that rescans every resting order on each step.

It shares nothing with OrderBook except the public ranking rule and the
record types, and is used as the oracle for the real book. Supported: limit,
market, hidden and fixed-refill reserve orders; Day and IOC; cancel and modify;
both allocation rules (without caps or thresholds).
"""
from fractions import Fraction
import math

from .errors import DuplicateOrderId, InvalidModification, InvalidOrder, UnknownInstrument, UnknownOrder
from .orders import MatchingAlgo, OrderKind, Side, TimeInForce, Trade, rank_key


class ReferenceBook:

	def __init__(self, instrument_id, venue_id="", algo=MatchingAlgo.FIFO, round_lot=100):
		self.instrument_id = instrument_id
		self.venue_id = venue_id
		self.algo = algo
		self.round_lot = round_lot
		self.resting = []
		self.seen = set()
		self.seq = 0
		self.trade_id = 0

	def _stamp(self, order, now):
		self.seq += 1
		order.entry_ts = now
		order.entry_seq = self.seq

	def _find(self, order_id):
		for o in self.resting:
			if o.order_id == order_id:
				return o
		raise UnknownOrder(order_id)

	def _marketable(self, taker, maker):
		if taker.kind is OrderKind.MARKET:
			return True
		if taker.side is Side.BUY:
			return maker.limit_price <= taker.limit_price
		return maker.limit_price >= taker.limit_price

	def _candidates(self, taker):
		return [o for o in self.resting if o.side is not taker.side and self._marketable(taker, o)]

	def _reachable(self, o):
		return o.displayed_qty if o.kind is OrderKind.RESERVE else o.open_qty

	def _fill(self, maker, taker, qty, now):
		maker.open_qty -= qty
		taker.open_qty -= qty
		if maker.kind is OrderKind.RESERVE:
			maker.displayed_qty -= qty
		elif maker.kind is OrderKind.HIDDEN:
			maker.displayed_qty = 0
		else:
			maker.displayed_qty = maker.open_qty
		self.trade_id += 1
		buyer, seller = (taker, maker) if taker.side is Side.BUY else (maker, taker)
		trade = Trade(taker.order_id, maker.order_id, maker.limit_price, qty, now, taker.side, self.trade_id,
			self.venue_id, self.instrument_id, buyer.participant_id, seller.participant_id, maker.kind)
		if maker.open_qty == 0:
			self.resting.remove(maker)
		elif maker.kind is OrderKind.RESERVE and maker.displayed_qty < self.round_lot and maker.open_qty > maker.displayed_qty:
			maker.displayed_qty += min(maker.display_size - maker.displayed_qty, maker.open_qty - maker.displayed_qty)
			self._stamp(maker, now)
		return trade

	def _match(self, taker, now):
		trades = []
		while taker.open_qty > 0:
			candidates = self._candidates(taker)
			if not candidates:
				break
			best = min(candidates, key=rank_key)
			if self.algo is MatchingAlgo.FIFO:
				trades.append(self._fill(best, taker, min(taker.open_qty, self._reachable(best)), now))
				continue
			at_price = [o for o in candidates if o.limit_price == best.limit_price and o.display_class is best.display_class]
			at_price.sort(key=rank_key)
			sizes = [self._reachable(o) for o in at_price]
			for maker, qty in zip(at_price, self._split(taker.open_qty, sizes)):
				if qty:
					trades.append(self._fill(maker, taker, qty, now))
		return trades

	def _split(self, quantity, sizes):
		total = sum(sizes)
		if quantity >= total:
			return list(sizes)
		shares = [Fraction(quantity * q, total) for q in sizes]
		allocs = [math.floor(s) for s in shares]
		ranked = sorted(range(len(sizes)), key=lambda i: (-(shares[i] - allocs[i]), i))
		for i in ranked[:quantity - sum(allocs)]:
			allocs[i] += 1
		return allocs

	def _display(self, order):
		if order.kind is OrderKind.HIDDEN:
			return 0
		if order.kind is OrderKind.RESERVE:
			return min(order.display_size, order.open_qty)
		return order.open_qty

	def insert(self, order, now):
		if order.instrument_id != self.instrument_id:
			raise UnknownInstrument(order.instrument_id)
		if order.order_id in self.seen:
			raise DuplicateOrderId(order.order_id)
		if order.total_qty <= 0 or (order.kind is not OrderKind.MARKET and order.limit_price is None):
			raise InvalidOrder(order.order_id)
		self.seen.add(order.order_id)
		self._stamp(order, now)
		trades = self._match(order, now)
		if order.open_qty > 0 and order.kind is not OrderKind.MARKET and order.tif is not TimeInForce.IOC:
			order.displayed_qty = self._display(order)
			self.resting.append(order)
			return trades, order
		return trades, None

	def cancel(self, order_id, now):
		order = self._find(order_id)
		self.resting.remove(order)
		return order

	def modify(self, order_id, new_price=None, new_qty=None, now=0):
		order = self._find(order_id)
		if new_qty is not None and new_qty <= 0:
			raise InvalidModification(order_id)
		qty = order.open_qty if new_qty is None else new_qty
		moved = new_price is not None and new_price != order.limit_price
		if not moved and qty <= order.open_qty:
			order.open_qty = qty
			if order.kind is OrderKind.RESERVE:
				order.displayed_qty = min(order.displayed_qty, qty)
			elif order.kind is not OrderKind.HIDDEN:
				order.displayed_qty = qty
			return order, []
		self.resting.remove(order)
		if moved:
			order.limit_price = new_price
		order.open_qty = qty
		order.displayed_qty = self._display(order)
		self._stamp(order, now)
		trades = self._match(order, now)
		if order.open_qty > 0:
			order.displayed_qty = self._display(order)
			self.resting.append(order)
		return order, trades

	def snapshot(self):
		"""(order_id, side, price, open, displayed, entry_ts, entry_seq) in rank order per side."""
		res = []
		for side in (Side.BUY, Side.SELL):
			for o in sorted((o for o in self.resting if o.side is side), key=rank_key):
				res.append((o.order_id, o.side, o.limit_price, o.open_qty, o.displayed_qty, o.entry_ts, o.entry_seq))
		return res


def book_state(book):
	"""Same tuple layout as ReferenceBook.snapshot, read from a real OrderBook."""
	return [(o.order_id, o.side, o.limit_price, o.open_qty, o.displayed_qty, o.entry_ts, o.entry_seq) for o in book.resting()]
