# -*- coding: utf-8 -*-
"""Randomized operation streams against the naive rescanning matcher."""
import numpy as np
import pytest

from engine import MatchingAlgo, Order, OrderBook, OrderKind, Side, TimeInForce, cancel_order, insert_order, modify_order
from engine.reference import ReferenceBook, book_state

OPS = 10000
SEEDS = range(20)
KINDS = (OrderKind.LIMIT, OrderKind.MARKET, OrderKind.HIDDEN, OrderKind.RESERVE)


def random_order(rng, order_id, now):
	kind = KINDS[int(rng.choice(len(KINDS), p=[0.6, 0.1, 0.15, 0.15]))]
	side = Side.BUY if rng.random() < 0.5 else Side.SELL
	qty = int(rng.integers(1, 500))
	fields = dict(
		order_id=order_id,
		participant_id=F"P{int(rng.integers(0, 5))}",
		venue_id="E1",
		instrument_id="XYZ",
		side=side,
		kind=kind,
		limit_price=None if kind is OrderKind.MARKET else int(rng.integers(95, 106)),
		total_qty=qty,
	)
	if kind is OrderKind.RESERVE:
		fields["display_size"] = int(rng.choice([100, 200, 300]))
	if kind is OrderKind.LIMIT and rng.random() < 0.15:
		fields["tif"] = TimeInForce.IOC
	return fields


def run_stream(seed, algo):
	rng = np.random.default_rng(seed)
	book = OrderBook("XYZ", "E1", algo)
	ref = ReferenceBook("XYZ", "E1", algo)
	engine_trades = []
	ref_trades = []
	next_id = 1
	for now in range(1, OPS + 1):
		roll = rng.random()
		resting = sorted(o.order_id for o in ref.resting)
		if roll < 0.55 or not resting:
			fields = random_order(rng, next_id, now)
			next_id += 1
			trades, _ = insert_order(book, Order(**fields), now)
			expected, _ = ref.insert(Order(**fields), now)
		elif roll < 0.85:
			order_id = resting[int(rng.integers(0, len(resting)))]
			cancel_order(book, order_id, now)
			ref.cancel(order_id, now)
			trades = expected = []
		else:
			order_id = resting[int(rng.integers(0, len(resting)))]
			new_price = int(rng.integers(95, 106)) if rng.random() < 0.5 else None
			new_qty = int(rng.integers(1, 500)) if new_price is None or rng.random() < 0.5 else None
			_, trades = modify_order(book, order_id, new_price, new_qty, now)
			_, expected = ref.modify(order_id, new_price, new_qty, now)
		engine_trades.extend(trades)
		ref_trades.extend(expected)
		assert trades == expected, F"seed {seed} diverged at op {now}"
	return book, ref, engine_trades, ref_trades


@pytest.mark.slow
@pytest.mark.parametrize("algo", [MatchingAlgo.FIFO, MatchingAlgo.PRO_RATA])
@pytest.mark.parametrize("seed", SEEDS)
def test_matches_reference(seed, algo):
	book, ref, engine_trades, ref_trades = run_stream(seed, algo)
	assert engine_trades == ref_trades
	assert engine_trades
	assert book_state(book) == ref.snapshot()
