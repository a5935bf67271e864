# -*- coding: utf-8 -*-
import itertools

import pytest
from pubsub import pub

from engine import MatchingAlgo, Order, OrderBook, OrderKind, Side


class OrderFactory:
	"""Builds engine orders with increasing ids for one book."""

	def __init__(self, instrument_id="XYZ", venue_id="E1"):
		self.instrument_id = instrument_id
		self.venue_id = venue_id
		self.ids = itertools.count(1)

	def __call__(self, side, price, qty, kind=OrderKind.LIMIT, participant="P", **kwargs):
		if isinstance(side, str):
			side = Side(side)
		return Order(
			order_id=kwargs.pop("order_id", None) or next(self.ids),
			participant_id=participant,
			venue_id=self.venue_id,
			instrument_id=self.instrument_id,
			side=side,
			kind=kind,
			limit_price=price,
			total_qty=qty,
			**kwargs,
		)


@pytest.fixture
def make_order():
	return OrderFactory()


@pytest.fixture
def fifo_book():
	return OrderBook("XYZ", "E1", MatchingAlgo.FIFO)


@pytest.fixture
def pro_rata_book():
	return OrderBook("XYZ", "E1", MatchingAlgo.PRO_RATA)


@pytest.fixture(autouse=True)
def clean_topics():
	"""Trace subscriptions never outlive a test."""
	yield
	pub.unsubAll()
