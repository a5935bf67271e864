# -*- coding: utf-8 -*-
import pytest

from engine import OrderKind, Side, TimeInForce, accumulate_order, clear_batch_auction
from engine.auction import auction_interest, executable_volume


@pytest.fixture
def batch_book(fifo_book):
	return fifo_book


def add(book, make_order, orders):
	res = []
	for i, (side, price, qty) in enumerate(orders):
		kind = OrderKind.MARKET if price is None else OrderKind.LIMIT
		res.append(accumulate_order(book, make_order(side, price, qty, kind), i + 1))
	return res


def test_worked_clearing(batch_book, make_order):
	b100, b50, s80, s60 = add(batch_book, make_order, [("buy", 102, 100), ("buy", 100, 50), ("sell", 101, 80), ("sell", 99, 60)])
	batch_book.last_trade_price = 100
	price, trades = clear_batch_auction(batch_book, 1000)
	assert price == 101
	assert sum(t.qty for t in trades) == 100
	assert all(t.price == 101 for t in trades)
	assert b100.open_qty == 0
	assert s60.open_qty == 0
	assert s80.filled_qty == 40
	assert b50.open_qty == 50


def test_single_cross(batch_book, make_order):
	add(batch_book, make_order, [("buy", 100, 10), ("sell", 100, 10)])
	price, trades = clear_batch_auction(batch_book, 1000)
	assert price == 100
	assert [t.qty for t in trades] == [10]
	assert batch_book.is_empty()


def test_uncrossed_book_does_not_clear(batch_book, make_order):
	add(batch_book, make_order, [("buy", 99, 10), ("sell", 101, 10)])
	assert clear_batch_auction(batch_book, 1000) == (None, [])
	assert len(batch_book.resting()) == 2


def test_accumulated_orders_do_not_trade_on_arrival(batch_book, make_order):
	add(batch_book, make_order, [("buy", 105, 10), ("sell", 95, 10)])
	assert batch_book.journal and all(type(r).__name__ == "BookEvent" for r in batch_book.journal)


def test_clearing_volume_is_maximal(batch_book, make_order):
	add(batch_book, make_order, [("buy", 103, 30), ("buy", 101, 70), ("buy", 99, 50), ("sell", 98, 40), ("sell", 100, 60), ("sell", 102, 90)])
	buys = auction_interest(batch_book, Side.BUY)
	sells = auction_interest(batch_book, Side.SELL)
	volumes = {p: executable_volume(buys, sells, p)[0] for p in range(95, 106)}
	price, trades = clear_batch_auction(batch_book, 1000)
	assert sum(t.qty for t in trades) == max(volumes.values())
	assert volumes[price] == max(volumes.values())


def test_market_and_ioc_remainders_are_canceled(batch_book, make_order):
	add(batch_book, make_order, [("buy", None, 50), ("sell", 100, 20)])
	ioc = accumulate_order(batch_book, make_order("buy", 90, 10, tif=TimeInForce.IOC), 3)
	price, trades = clear_batch_auction(batch_book, 1000)
	assert price == 100
	assert [t.qty for t in trades] == [20]
	assert batch_book.is_empty()
	assert ioc.order_id not in batch_book


def test_later_arrival_is_aggressor(batch_book, make_order):
	add(batch_book, make_order, [("sell", 100, 10), ("buy", 100, 10)])
	_, trades = clear_batch_auction(batch_book, 1000)
	assert trades[0].aggressor_side is Side.BUY


def test_reserve_fill_comes_out_of_the_slice(batch_book, make_order):
	reserve = accumulate_order(batch_book, make_order("sell", 100, 1000, OrderKind.RESERVE, display_size=200), 1)
	accumulate_order(batch_book, make_order("buy", 100, 100), 2)
	clear_batch_auction(batch_book, 1000)
	assert (reserve.open_qty, reserve.displayed_qty, reserve.reserve_qty) == (900, 100, 800)
	assert reserve.entry_ts == 1


def test_reserve_slice_below_a_lot_is_refilled(batch_book, make_order):
	reserve = accumulate_order(batch_book, make_order("sell", 100, 1000, OrderKind.RESERVE, display_size=200), 1)
	accumulate_order(batch_book, make_order("buy", 100, 150), 2)
	clear_batch_auction(batch_book, 1000)
	assert (reserve.open_qty, reserve.displayed_qty) == (850, 200)
	assert reserve.entry_ts == 1000
