# -*- coding: utf-8 -*-
"""Value snapshots of a book as market data shows it.

Only lit, displayed quantity appears: hidden orders, hidden Hide & Light
orders and reserve back-quantities never do. Anonymous orders carry the
generic participant id.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from .orders import DisplayClass, Side

GENERIC_ID = "ANON"


@dataclass(frozen=True)
class OrderView:
	order_id: int
	participant_id: str
	qty: int
	listed_ts: int
	submitted_ts: int


@dataclass(frozen=True)
class LevelView:
	price: int
	qty: int
	orders: Tuple[OrderView, ...] = ()


@dataclass(frozen=True)
class BookView:
	"""L2: depth-limited displayed levels with per-order listing times."""
	venue_id: str
	instrument_id: str
	ts: int
	bids: Tuple[LevelView, ...] = ()
	asks: Tuple[LevelView, ...] = ()

	def level(self, side, price):
		for lv in (self.bids if side is Side.BUY else self.asks):
			if lv.price == price:
				return lv
		return None

	def summary(self):
		return F"L2 {self.venue_id}/{self.instrument_id} bids={len(self.bids)} asks={len(self.asks)}"


@dataclass(frozen=True)
class QuoteView:
	"""L1: best displayed bid and ask."""
	venue_id: str
	instrument_id: str
	ts: int
	bid: Optional[int] = None
	bid_qty: int = 0
	ask: Optional[int] = None
	ask_qty: int = 0

	def summary(self):
		return F"L1 {self.venue_id}/{self.instrument_id} {self.bid}x{self.bid_qty} / {self.ask}x{self.ask_qty}"


def _public_id(order, generic_id):
	return generic_id if order.anonymous else order.participant_id


def _levels(levels, depth, generic_id):
	res = []
	for price, level in levels.items():
		if len(res) >= depth:
			break
		lit = [o for o in level if o.display_class is DisplayClass.LIT and o.displayed_qty > 0]
		if not lit:
			continue
		views = tuple(OrderView(o.order_id, _public_id(o, generic_id), o.displayed_qty, o.entry_ts, o.claimed_submit_ts) for o in lit)
		res.append(LevelView(price, sum(v.qty for v in views), views))
	return tuple(res)


def book_snapshot(book, depth=10, now=0, generic_id=GENERIC_ID):
	return BookView(book.venue_id, book.instrument_id, now, _levels(book.bids, depth, generic_id), _levels(book.asks, depth, generic_id))


def best_quotes(book, now=0):
	bid = _levels(book.bids, 1, GENERIC_ID)
	ask = _levels(book.asks, 1, GENERIC_ID)
	return QuoteView(
		book.venue_id,
		book.instrument_id,
		now,
		bid[0].price if bid else None,
		bid[0].qty if bid else 0,
		ask[0].price if ask else None,
		ask[0].qty if ask else 0,
	)
