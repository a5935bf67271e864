# -*- coding: utf-8 -*-
"""Order, trade and book-journal records shared by every layer.

Prices are integer ticks, quantities integer shares and times integer
microseconds. Nothing in here is floating point.
"""
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Optional


class Side(Enum):
	BUY = "buy"
	SELL = "sell"

	@property
	def opposite(self):
		return Side.SELL if self is Side.BUY else Side.BUY


class OrderKind(Enum):
	MARKET = "market"
	LIMIT = "limit"
	RESERVE = "reserve"
	DISCRETIONARY = "discretionary"
	HIDDEN = "hidden"
	HIDE_AND_LIGHT = "hide_and_light"
	DAY_ISO = "day_iso"


class TimeInForce(Enum):
	DAY = "day"
	IOC = "ioc"
	GTT = "gtt"


class DisplayState(Enum):
	DISPLAYED = "displayed"
	HIDDEN = "hidden"
	SLID = "slid"


class DisplayClass(IntEnum):
	# lit ranks first at equal price
	LIT = 0
	HIDDEN = 1


class Replenish(Enum):
	FIXED = "fixed"
	RANDOM = "random"


class MatchingAlgo(Enum):
	FIFO = "fifo"
	PRO_RATA = "pro_rata"


# venue-granted slot ahead of normal time priority (first Day ISO at a level)
PRIORITY_HEAD = 0
PRIORITY_NORMAL = 1


@dataclass(eq=False)
class Order:
	order_id: int
	participant_id: str
	venue_id: str
	instrument_id: str
	side: Side
	kind: OrderKind
	limit_price: Optional[int]
	total_qty: int
	open_qty: Optional[int] = None
	displayed_qty: Optional[int] = None
	display_size: int = 0
	replenish: Replenish = Replenish.FIXED
	discretion: int = 0
	anonymous: bool = False
	claimed_submit_ts: int = 0
	entry_ts: int = -1
	entry_seq: int = -1
	display_state: DisplayState = DisplayState.DISPLAYED
	slid_from: Optional[int] = None
	tif: TimeInForce = TimeInForce.DAY
	expire_at: Optional[int] = None
	priority: int = PRIORITY_NORMAL
	filled_qty: int = 0
	routable: bool = True
	routed_from: Optional[str] = None

	def __post_init__(self):
		if self.open_qty is None:
			self.open_qty = self.total_qty
		if self.kind is OrderKind.HIDDEN:
			self.display_state = DisplayState.HIDDEN
		if self.displayed_qty is None:
			self.displayed_qty = self.initial_display()

	def initial_display(self):
		if self.kind is OrderKind.HIDDEN or self.display_state is DisplayState.HIDDEN:
			return 0
		if self.kind is OrderKind.RESERVE:
			return min(self.display_size, self.open_qty)
		return self.open_qty

	@property
	def display_class(self):
		if self.kind is OrderKind.HIDDEN or self.display_state is DisplayState.HIDDEN:
			return DisplayClass.HIDDEN
		return DisplayClass.LIT

	@property
	def executable_qty(self):
		"""Quantity a taker can reach right now; reserve orders only expose their slice."""
		if self.kind is OrderKind.RESERVE:
			return self.displayed_qty
		return self.open_qty

	@property
	def reserve_qty(self):
		if self.kind is not OrderKind.RESERVE:
			return 0
		return self.open_qty - self.displayed_qty

	@property
	def has_hidden_liquidity(self):
		return self.display_class is DisplayClass.HIDDEN or self.reserve_qty > 0

	@property
	def original_price(self):
		"""Price the owner asked for, even while the venue has slid the order."""
		return self.slid_from if self.slid_from is not None else self.limit_price

	def refresh_display(self):
		"""Re-derive displayed_qty after open_qty changed outside a reserve fill."""
		if self.display_class is DisplayClass.HIDDEN:
			self.displayed_qty = 0
		elif self.kind is OrderKind.RESERVE:
			self.displayed_qty = min(self.displayed_qty, self.open_qty)
		else:
			self.displayed_qty = self.open_qty


def rank_key(order):
	"""Total ranking: better price, then lit before hidden, then time.

	The priority slot sits between class and time so a venue can place an
	order at the head of its class without rewriting its timestamps.
	"""
	price = order.limit_price if order.limit_price is not None else 0
	price_key = -price if order.side is Side.BUY else price
	return (price_key, int(order.display_class), order.priority, order.entry_ts, order.entry_seq)


@dataclass(frozen=True)
class Trade:
	taker_order_id: int
	maker_order_id: int
	price: int
	qty: int
	ts: int
	aggressor_side: Side
	trade_id: int = 0
	venue_id: str = ""
	instrument_id: str = ""
	buyer_id: str = ""
	seller_id: str = ""
	maker_kind: OrderKind = OrderKind.LIMIT


@dataclass(frozen=True)
class BookEvent:
	"""Journal entry for one change to resting state.

	action is rest, rerank, amend or remove; reason says what caused it
	(insert, replenish, modify, slide, revert, hide, relight, iso_priority,
	cancel, filled, expired, ioc).
	"""
	ts: int
	venue_id: str
	instrument_id: str
	action: str
	reason: str
	order_id: int
	participant_id: str
	side: Side
	order_kind: OrderKind
	price: Optional[int]
	ref_price: Optional[int]
	display_class: DisplayClass
	entry_ts: int
	entry_seq: int
	open_qty: int
	displayed_qty: int
	hidden_liquidity: bool = False
