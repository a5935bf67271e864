# -*- coding: utf-8 -*-
"""Lock/cross handling and order protection against away quotes.

Every function takes the away NBBO, i.e. the consolidated quote computed
without the venue's own L1, as the venue last heard it from the SIP.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from engine import PRIORITY_HEAD, DisplayState, OrderKind, Side

log = logging.getLogger("venue.lock_cross")


def locks_or_crosses(side, price, away):
	"""True when a displayed order at price would lock or cross the away quote."""
	if away is None or price is None:
		return False
	if side is Side.BUY:
		return away.ask is not None and price >= away.ask
	return away.bid is not None and price <= away.bid


def slide_price(side, away):
	return away.ask - 1 if side is Side.BUY else away.bid + 1


def handle_lock_cross(order, away):
	"""Adjust a non-marketable order before it rests.

	Limit orders slide one tick away from the away quote, Hide & Light orders
	rest hidden at their own price, Day ISO orders are left alone.
	Returns the reason the order was adjusted, or None.
	"""
	if order.kind not in (OrderKind.LIMIT, OrderKind.HIDE_AND_LIGHT):
		return None
	if order.display_state is not DisplayState.DISPLAYED:
		return None
	if not locks_or_crosses(order.side, order.limit_price, away):
		return None
	if order.kind is OrderKind.LIMIT:
		order.slid_from = order.limit_price
		order.limit_price = slide_price(order.side, away)
		order.display_state = DisplayState.SLID
		log.debug(F"order {order.order_id} slid from {order.slid_from} to {order.limit_price}")
		return "slide"
	order.display_state = DisplayState.HIDDEN
	order.displayed_qty = 0
	log.debug(F"hide and light order {order.order_id} hidden at {order.limit_price}")
	return "hide"


def _relight(order):
	order.display_state = DisplayState.DISPLAYED
	order.displayed_qty = order.open_qty


def _hide(order):
	order.display_state = DisplayState.HIDDEN
	order.displayed_qty = 0


def _unslide(order):
	order.slid_from = None
	order.display_state = DisplayState.DISPLAYED


def on_unlock(book, away, now):
	"""Re-evaluate adjusted orders after the away quote changed.

	Hidden Hide & Light orders whose price no longer locks are relit first,
	keeping their time priority. Slid orders then go back to their original
	price, in their relative order, with fresh time priority; ones that are
	still locked follow the away quote if it moved. Displayed Hide & Light
	orders that now lock are hidden. Returns the (reason, order) pairs applied.
	"""
	applied = []
	resting = book.resting()
	by_time = lambda o: (o.entry_ts, o.entry_seq)
	for order in sorted((o for o in resting if o.kind is OrderKind.HIDE_AND_LIGHT and o.display_state is DisplayState.HIDDEN), key=by_time):
		if not locks_or_crosses(order.side, order.limit_price, away):
			book.rerank(order, now, "relight", fresh=False, mutate=_relight)
			applied.append(("relight", order))
	for order in sorted((o for o in resting if o.display_state is DisplayState.SLID), key=by_time):
		if not locks_or_crosses(order.side, order.slid_from, away):
			if _would_trade(book, order.side, order.slid_from):
				continue
			book.rerank(order, now, "revert", price=order.slid_from, mutate=_unslide)
			applied.append(("revert", order))
		else:
			target = slide_price(order.side, away)
			if target != order.limit_price and not _would_trade(book, order.side, target):
				book.rerank(order, now, "slide", price=target)
				applied.append(("slide", order))
	for order in sorted((o for o in resting if o.kind is OrderKind.HIDE_AND_LIGHT and o.display_state is DisplayState.DISPLAYED), key=by_time):
		if locks_or_crosses(order.side, order.limit_price, away):
			book.rerank(order, now, "hide", fresh=False, mutate=_hide)
			applied.append(("hide", order))
	return applied


def _would_trade(book, side, price):
	best = book.best_price(side.opposite)
	if best is None:
		return False
	return best <= price if side is Side.BUY else best >= price


def day_iso_priority(book, order, now):
	"""The first Day ISO resting at a price takes the head of its class there.

	Later ISOs at the same level queue normally. Returns True when the order
	was promoted.
	"""
	key = (order.side, order.limit_price)
	if key in book.iso_levels:
		return False
	book.iso_levels.add(key)

	def promote(o):
		o.priority = PRIORITY_HEAD
	book.rerank(order, now, "iso_priority", fresh=False, mutate=promote)
	return True


class Protection(Enum):
	EXECUTE = "execute"
	HOLD = "hold"
	ROUTE = "route"
	REJECT = "reject"


@dataclass(frozen=True)
class ProtectionDecision:
	action: Protection
	away_price: Optional[int] = None
	away_venue: Optional[str] = None


EXECUTE = ProtectionDecision(Protection.EXECUTE)


def apply_order_protection(order, away, local_best, policy="route", limit=None):
	"""Decide whether an order may trade at the local best price.

	A trade-through happens when the away quote is strictly better than
	local_best (or local_best is None) and the order's limit reaches it.
	limit stands in for the limit price, e.g. a discretionary reach.
	A routable order's remainder is then routed to the away venue or
	rejected, depending on policy; a non-routable order stops trading
	locally (HOLD) and its remainder rests subject to lock/cross handling.
	Day ISO orders and orders that were themselves routed are not protected.
	"""
	if order.kind is OrderKind.DAY_ISO or order.routed_from is not None:
		return EXECUTE
	quote = away.best_ask if order.side is Side.BUY else away.best_bid
	if quote is None:
		return EXECUTE
	price, venue_id = quote
	if limit is None:
		limit = order.limit_price
	if order.kind is not OrderKind.MARKET and not _reaches(order.side, limit, price):
		return EXECUTE
	if local_best is not None and not _better(order.side, price, local_best):
		return EXECUTE
	if not order.routable:
		return ProtectionDecision(Protection.HOLD, price, venue_id)
	if policy == "reject":
		return ProtectionDecision(Protection.REJECT, price, venue_id)
	return ProtectionDecision(Protection.ROUTE, price, venue_id)


def _reaches(side, limit, price):
	return price <= limit if side is Side.BUY else price >= limit


def _better(side, price, than):
	return price < than if side is Side.BUY else price > than
