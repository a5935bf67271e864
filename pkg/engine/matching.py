# -*- coding: utf-8 -*-
"""Continuous matching: insert, cancel, modify and the two allocation rules."""
import logging

from .errors import DuplicateOrderId, InvalidModification, InvalidOrder, UnknownInstrument, UnknownOrder
from .orders import PRIORITY_NORMAL, DisplayClass, DisplayState, MatchingAlgo, OrderKind, Replenish, Side, TimeInForce, Trade

log = logging.getLogger("engine.matching")


def validate_order(book, order):
	if order.instrument_id != book.instrument_id:
		raise UnknownInstrument(order.instrument_id)
	if order.order_id in book.seen_ids:
		raise DuplicateOrderId(order.order_id)
	if order.total_qty <= 0 or order.open_qty <= 0:
		raise InvalidOrder(F"order {order.order_id} has no quantity")
	if order.kind is not OrderKind.MARKET and (order.limit_price is None or order.limit_price < 0):
		raise InvalidOrder(F"order {order.order_id} needs a non-negative limit price")
	if order.kind is OrderKind.RESERVE and order.display_size <= 0:
		raise InvalidOrder(F"reserve order {order.order_id} needs a display size")
	if order.discretion < 0:
		raise InvalidOrder(F"order {order.order_id} has a negative discretionary range")
	if order.tif is TimeInForce.GTT and order.expire_at is None:
		raise InvalidOrder(F"gtt order {order.order_id} has no expiry")


def crosses(incoming, price, limit=None):
	"""Whether a resting price is reachable; an explicit limit also caps market orders."""
	if limit is None:
		if incoming.kind is OrderKind.MARKET:
			return True
		limit = incoming.limit_price
	if incoming.side is Side.BUY:
		return price <= limit
	return price >= limit


def insert_order(book, order, now):
	"""Match an arriving order and rest what is left.

	Returns (trades, resting) where resting is the order itself when a
	remainder stays on the book, otherwise None. Market and IOC remainders
	are dropped.
	"""
	validate_order(book, order)
	book.seen_ids.add(order.order_id)
	book.stamp(order, now)
	trades = match(book, order, now)
	if order.kind is OrderKind.DISCRETIONARY and order.open_qty > 0 and order.discretion > 0:
		trades.extend(discretionary_probe(book, order, now))
	resting = None
	if order.open_qty > 0 and order.kind is not OrderKind.MARKET and order.tif is not TimeInForce.IOC:
		order.displayed_qty = order.initial_display()
		book.rest(order, now)
		resting = order
	return trades, resting


def accumulate_order(book, order, now):
	"""Rest an order without matching, for venues that clear in batches."""
	validate_order(book, order)
	book.seen_ids.add(order.order_id)
	book.stamp(order, now)
	order.displayed_qty = order.initial_display()
	if order.kind is OrderKind.MARKET:
		book.auction_market_orders.append(order)
		book.orders[order.order_id] = order
		book.record("rest", "insert", order, now)
	else:
		book.rest(order, now)
	return order


def match(book, incoming, now, limit=None):
	if book.algo is MatchingAlgo.PRO_RATA:
		return match_pro_rata(book, incoming, now, limit)
	return match_fifo(book, incoming, now, limit)


def match_fifo(book, incoming, now, limit=None):
	trades = []
	opposite = book.side(incoming.side.opposite)
	while incoming.open_qty > 0 and opposite:
		price, level = opposite.peekitem(0)
		if not crosses(incoming, price, limit):
			break
		maker = level.head
		qty = min(incoming.open_qty, maker.executable_qty)
		trades.append(execute(book, maker, incoming, qty, price, now))
	return trades


def match_pro_rata(book, incoming, now, limit=None):
	trades = []
	opposite = book.side(incoming.side.opposite)
	while incoming.open_qty > 0 and opposite:
		price, level = opposite.peekitem(0)
		if not crosses(incoming, price, limit):
			break
		members = level.members(DisplayClass.LIT) or level.members(DisplayClass.HIDDEN)
		sizes = [o.executable_qty for o in members]
		allocs = allocate_pro_rata(incoming.open_qty, sizes, book.pro_rata_min_alloc, book.pro_rata_max_alloc)
		for maker, qty in zip(members, allocs):
			if qty > 0:
				trades.append(execute(book, maker, incoming, qty, price, now))
	return trades


def allocate_pro_rata(quantity, sizes, min_alloc=0, max_alloc=0):
	"""Largest-remainder split of quantity over sizes given in time priority.

	Each share left after flooring goes to the largest fractional remainder,
	earlier orders winning ties. max_alloc caps and min_alloc floors the
	proportional stage; whatever they free is handed out in time priority.
	"""
	total = sum(sizes)
	if quantity >= total:
		return list(sizes)
	allocs = [quantity * q // total for q in sizes]
	remainders = [quantity * q % total for q in sizes]
	leftover = quantity - sum(allocs)
	for i in sorted(range(len(sizes)), key=lambda i: (-remainders[i], i))[:leftover]:
		allocs[i] += 1
	if not min_alloc and not max_alloc:
		return allocs
	freed = 0
	for i, a in enumerate(allocs):
		if max_alloc and a > max_alloc:
			freed += a - max_alloc
			allocs[i] = max_alloc
		elif min_alloc and 0 < a < min_alloc:
			freed += a
			allocs[i] = 0
	for capped in (True, False):
		for i, q in enumerate(sizes):
			if not freed:
				break
			room = (min(q, max_alloc) if capped and max_alloc else q) - allocs[i]
			take = min(freed, room)
			if take > 0:
				allocs[i] += take
				freed -= take
	return allocs


def execute(book, maker, taker, qty, price, now):
	maker.open_qty -= qty
	maker.filled_qty += qty
	if maker.kind is OrderKind.RESERVE:
		maker.displayed_qty -= qty
	else:
		maker.refresh_display()
	taker.open_qty -= qty
	taker.filled_qty += qty
	taker.displayed_qty = min(taker.displayed_qty, taker.open_qty)
	book.last_trade_price = price
	trade = make_trade(book, maker, taker, qty, price, now)
	if maker.open_qty == 0:
		book.remove(maker, now, "filled")
	elif maker.kind is OrderKind.RESERVE and maker.displayed_qty < book.round_lot:
		replenish_reserve(book, maker, book.rng(maker), now)
	return trade


def replenish_reserve(book, order, rng, now):
	"""Refill a reserve order's displayed slice from its hidden reserve.

	The refilled order goes to the back of its class at its price. A no-op
	when the slice is still at least a round lot or the reserve is empty.
	"""
	if order.kind is not OrderKind.RESERVE:
		return order
	if order.displayed_qty >= book.round_lot or order.open_qty <= order.displayed_qty:
		return order
	if order.replenish is Replenish.RANDOM:
		low = min(book.round_lot, order.display_size)
		target = int(rng.integers(low, order.display_size + 1))
		target = min(max(target, order.displayed_qty), order.open_qty)
	else:
		target = order.displayed_qty + min(order.display_size - order.displayed_qty, order.open_qty - order.displayed_qty)

	def refill(o):
		o.displayed_qty = target
	book.rerank(order, now, "replenish", mutate=refill)
	log.debug(F"replenished reserve {order.order_id} to {target}, {order.reserve_qty} left in reserve")
	return order


def discretion_reach(order):
	"""Furthest price a discretionary order will trade at: limit + range for buys, limit - range for sells."""
	if order.side is Side.BUY:
		return order.limit_price + order.discretion
	return max(order.limit_price - order.discretion, 0)


def discretionary_probe(book, order, now, limit=None):
	"""Look for fills inside the hidden discretionary range.

	Fills print at the resting order's price. limit narrows the reach
	further, e.g. to a single price level.
	"""
	if order.discretion <= 0 or order.open_qty <= 0:
		return []
	reach = discretion_reach(order)
	if limit is not None:
		reach = min(reach, limit) if order.side is Side.BUY else max(reach, limit)
	return match(book, order, now, limit=reach)


def cancel_order(book, order_id, now, reason="cancel"):
	order = book.orders.get(order_id)
	if order is None:
		raise UnknownOrder(order_id)
	if order in book.auction_market_orders:
		book.auction_market_orders.remove(order)
		del book.orders[order_id]
		book.record("remove", reason, order, now)
	else:
		book.remove(order, now, reason)
	return order


def modify_order(book, order_id, new_price=None, new_qty=None, now=0, allow_match=True):
	"""Change price and/or leaves quantity of a resting order.

	A pure size decrease keeps queue position. A price change or size increase
	is a cancel plus re-insert: fresh time priority, and it may trade.
	Returns (order, trades).
	"""
	order, reentered = amend_order(book, order_id, new_price, new_qty, now)
	if not reentered:
		return order, []
	trades = match(book, order, now) if allow_match else []
	if order.open_qty > 0:
		order.displayed_qty = order.initial_display()
		book.rest(order, now, "modify")
	return order, trades


def amend_order(book, order_id, new_price=None, new_qty=None, now=0):
	"""Apply a modify up to the point where the order would re-enter the book.

	A pure size decrease is applied in place and the order keeps its queue
	position: returns (order, False). Otherwise the order leaves the book
	with a fresh stamp and normal priority, and the caller matches and rests
	it: returns (order, True).
	"""
	order = book.orders.get(order_id)
	if order is None:
		raise UnknownOrder(order_id)
	if new_qty is not None and new_qty <= 0:
		raise InvalidModification(F"order {order_id}: quantity must be positive")
	if new_price is not None and new_price < 0:
		raise InvalidModification(F"order {order_id}: negative price")
	if order.kind is OrderKind.MARKET:
		raise InvalidModification(F"order {order_id}: market orders cannot be modified")
	qty = order.open_qty if new_qty is None else new_qty
	price_change = new_price is not None and new_price != order.original_price
	if not price_change and qty <= order.open_qty:
		order.total_qty -= order.open_qty - qty
		order.open_qty = qty
		order.refresh_display()
		book.record("amend", "modify", order, now)
		return order, False
	book.remove(order, now, "modify")
	if price_change:
		order.limit_price = new_price
		order.slid_from = None
		if order.kind is not OrderKind.HIDDEN:
			order.display_state = DisplayState.DISPLAYED
	order.total_qty += qty - order.open_qty
	order.open_qty = qty
	order.displayed_qty = order.initial_display()
	order.priority = PRIORITY_NORMAL
	book.stamp(order, now)
	return order, True


def make_trade(book, maker, taker, qty, price, now):
	buyer, seller = (taker, maker) if taker.side is Side.BUY else (maker, taker)
	trade = Trade(
		taker_order_id=taker.order_id,
		maker_order_id=maker.order_id,
		price=price,
		qty=qty,
		ts=now,
		aggressor_side=taker.side,
		trade_id=book.next_trade_id(),
		venue_id=book.venue_id,
		instrument_id=book.instrument_id,
		buyer_id=buyer.participant_id,
		seller_id=seller.participant_id,
		maker_kind=maker.kind,
	)
	book.journal.append(trade)
	return trade
