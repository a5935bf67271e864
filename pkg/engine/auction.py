# -*- coding: utf-8 -*-
"""Uniform-price call auction for venues that trade in discrete time."""
import logging

from .matching import make_trade, replenish_reserve
from .orders import OrderKind, Side, TimeInForce, rank_key

log = logging.getLogger("engine.auction")


def _auction_rank(order):
	# market orders first, then normal price/class/time ranking
	return (0 if order.kind is OrderKind.MARKET else 1,) + rank_key(order)


def _eligible(order, side, price):
	if order.kind is OrderKind.MARKET:
		return True
	if side is Side.BUY:
		return order.limit_price >= price
	return order.limit_price <= price


def auction_interest(book, side):
	orders = [o for level in book.side(side).values() for o in level]
	orders.extend(o for o in book.auction_market_orders if o.side is side)
	return sorted(orders, key=_auction_rank)


def executable_volume(buys, sells, price):
	demand = sum(o.open_qty for o in buys if _eligible(o, Side.BUY, price))
	supply = sum(o.open_qty for o in sells if _eligible(o, Side.SELL, price))
	return min(demand, supply), demand, supply


def choose_clearing_price(buys, sells, last_trade_price):
	"""Volume-maximizing price; ties go nearest the last trade, then lower."""
	prices = sorted({o.limit_price for o in buys + sells if o.kind is not OrderKind.MARKET})
	best = None
	for price in prices:
		volume = executable_volume(buys, sells, price)[0]
		if volume <= 0:
			continue
		distance = abs(price - last_trade_price) if last_trade_price is not None else 0
		key = (-volume, distance, price)
		if best is None or key < best[0]:
			best = (key, price, volume)
	if best is None:
		return None, 0
	return best[1], best[2]


def _allocate(orders, side, price, volume):
	res = []
	remaining = volume
	for o in orders:
		if remaining <= 0:
			break
		if not _eligible(o, side, price):
			continue
		take = min(o.open_qty, remaining)
		res.append([o, take])
		remaining -= take
	return res


def clear_batch_auction(book, now):
	"""Clear everything accumulated since the last auction at one price.

	Returns (clearing_price, trades); (None, []) when nothing crosses. IOC and
	market remainders are canceled afterwards either way.
	"""
	buys = auction_interest(book, Side.BUY)
	sells = auction_interest(book, Side.SELL)
	price, volume = choose_clearing_price(buys, sells, book.last_trade_price)
	trades = []
	if price is not None:
		buy_fills = _allocate(buys, Side.BUY, price, volume)
		sell_fills = _allocate(sells, Side.SELL, price, volume)
		touched = []
		b = s = 0
		while b < len(buy_fills) and s < len(sell_fills):
			buy, buy_left = buy_fills[b]
			sell, sell_left = sell_fills[s]
			qty = min(buy_left, sell_left)
			# the later arrival is the aggressor
			if (buy.entry_ts, buy.entry_seq) > (sell.entry_ts, sell.entry_seq):
				taker, maker = buy, sell
			else:
				taker, maker = sell, buy
			trades.append(_auction_fill(book, maker, taker, qty, price, now))
			for o in (buy, sell):
				if o not in touched:
					touched.append(o)
			buy_fills[b][1] -= qty
			sell_fills[s][1] -= qty
			if buy_fills[b][1] == 0:
				b += 1
			if sell_fills[s][1] == 0:
				s += 1
		for o in touched:
			if o.open_qty == 0 and o.order_id in book.orders:
				_drop(book, o, now, "filled")
			elif o.kind is OrderKind.RESERVE and o.order_id in book.orders:
				replenish_reserve(book, o, book.rng(o), now)
		log.debug(F"auction {book.venue_id}/{book.instrument_id} cleared {volume} at {price}")
	for o in list(book.orders.values()):
		if o.kind is OrderKind.MARKET or o.tif is TimeInForce.IOC:
			_drop(book, o, now, "ioc")
	return price, trades


def _auction_fill(book, maker, taker, qty, price, now):
	"""Both sides of an auction fill are resting, so neither leaves the book here."""
	for o in (maker, taker):
		o.open_qty -= qty
		o.filled_qty += qty
		if o.kind is OrderKind.RESERVE:
			# the slice goes first, then the reserve behind it
			o.displayed_qty = max(o.displayed_qty - qty, 0)
		else:
			o.refresh_display()
	book.last_trade_price = price
	return make_trade(book, maker, taker, qty, price, now)


def _drop(book, order, now, reason):
	if order in book.auction_market_orders:
		book.auction_market_orders.remove(order)
		del book.orders[order.order_id]
		book.record("remove", reason, order, now)
	else:
		book.remove(order, now, reason)
