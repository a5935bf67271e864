# -*- coding: utf-8 -*-
"""What crosses a venue's gateway: order messages in, reports and prints out."""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from engine import Order, OrderKind, Replenish, Side, TimeInForce

from .errors import MalformedMessage


class MsgType(Enum):
	NEW = "new"
	CANCEL = "cancel"
	MODIFY = "modify"


class ExecStatus(Enum):
	FILL = "fill"
	CANCELED = "canceled"
	REPLACED = "replaced"
	REJECTED = "rejected"
	ROUTED = "routed"
	EXPIRED = "expired"


@dataclass(frozen=True)
class OrderMessage:
	msg_type: MsgType
	order_id: int
	participant_id: str
	venue_id: str
	instrument_id: str
	side: Optional[Side] = None
	kind: OrderKind = OrderKind.LIMIT
	limit_price: Optional[int] = None
	qty: int = 0
	display_size: int = 0
	replenish: Replenish = Replenish.FIXED
	discretion: int = 0
	anonymous: bool = False
	tif: TimeInForce = TimeInForce.DAY
	expire_at: Optional[int] = None
	claimed_submit_ts: int = 0
	new_price: Optional[int] = None
	new_qty: Optional[int] = None
	routable: bool = True
	routed_from: Optional[str] = None

	def validate(self):
		if not self.participant_id:
			raise MalformedMessage(F"message for order {self.order_id} has no participant")
		if self.order_id is None:
			raise MalformedMessage("message has no order id")
		if self.msg_type is MsgType.NEW:
			if self.side is None:
				raise MalformedMessage(F"new order {self.order_id} has no side")
			if self.qty <= 0:
				raise MalformedMessage(F"new order {self.order_id} has no quantity")
			if self.kind is not OrderKind.MARKET and self.limit_price is None:
				raise MalformedMessage(F"new {self.kind.value} order {self.order_id} has no price")
		elif self.msg_type is MsgType.MODIFY and self.new_price is None and self.new_qty is None:
			raise MalformedMessage(F"modify for order {self.order_id} changes nothing")
		return self

	def to_order(self):
		return Order(
			order_id=self.order_id,
			participant_id=self.participant_id,
			venue_id=self.venue_id,
			instrument_id=self.instrument_id,
			side=self.side,
			kind=self.kind,
			limit_price=self.limit_price,
			total_qty=self.qty,
			display_size=self.display_size,
			replenish=self.replenish,
			discretion=self.discretion,
			anonymous=self.anonymous,
			claimed_submit_ts=self.claimed_submit_ts,
			tif=self.tif,
			expire_at=self.expire_at,
			routable=self.routable,
			routed_from=self.routed_from,
		)

	def summary(self):
		if self.msg_type is MsgType.NEW:
			price = "mkt" if self.limit_price is None else self.limit_price
			return F"{self.msg_type.value} {self.order_id} {self.participant_id} {self.side.value} {self.kind.value} {self.qty}@{price} {self.tif.value}"
		return F"{self.msg_type.value} {self.order_id} {self.participant_id}"


@dataclass(frozen=True)
class ExecutionReport:
	order_id: int
	participant_id: str
	venue_id: str
	status: ExecStatus
	ts: int
	qty: int = 0
	price: Optional[int] = None
	leaves_qty: int = 0
	instrument_id: str = ""
	side: Optional[Side] = None
	trade_id: int = 0
	maker: bool = False
	routed_to: Optional[str] = None
	child_order_id: Optional[int] = None
	reason: str = ""

	def summary(self):
		if self.status is ExecStatus.FILL:
			return F"report {self.order_id} fill {self.qty}@{self.price} leaves {self.leaves_qty}"
		extra = F" to {self.routed_to}" if self.routed_to else (F" ({self.reason})" if self.reason else "")
		return F"report {self.order_id} {self.status.value}{extra}"


@dataclass(frozen=True)
class TradePrint:
	"""Public record of one execution; ids are public ids, never owners of anonymous orders."""
	venue_id: str
	instrument_id: str
	trade_id: int
	price: int
	qty: int
	trade_ts: int
	aggressor_side: Side
	buyer_id: str
	seller_id: str
	ts: int = 0

	def summary(self):
		return F"print {self.venue_id}/{self.instrument_id} {self.qty}@{self.price} #{self.trade_id}"


@dataclass(frozen=True)
class EngineWork:
	"""A gateway message released to the matching engine after any speed bump."""
	message: OrderMessage
	arrival_ts: int

	def summary(self):
		return F"engine {self.message.summary()}"
