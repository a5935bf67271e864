# -*- coding: utf-8 -*-
"""Consolidated quote aggregator.

The NBBO it publishes is computed over the L1s it has received, which may be
behind the venues' real books.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

log = logging.getLogger("simnet.sip")

SIP_ID = "SIP"


@dataclass(frozen=True)
class NbboQuote:
	best_bid: Optional[Tuple[int, str]] = None
	best_ask: Optional[Tuple[int, str]] = None
	ts: int = 0

	@property
	def bid(self):
		return self.best_bid[0] if self.best_bid else None

	@property
	def ask(self):
		return self.best_ask[0] if self.best_ask else None


def compute_nbbo(quotes, now, exclude=None):
	"""Highest bid and lowest ask over venue L1s; equal prices cite the lowest venue id."""
	bid = ask = None
	for q in sorted(quotes, key=lambda q: q.venue_id):
		if q.venue_id == exclude:
			continue
		if q.bid is not None and (bid is None or q.bid > bid[0]):
			bid = (q.bid, q.venue_id)
		if q.ask is not None and (ask is None or q.ask < ask[0]):
			ask = (q.ask, q.venue_id)
	return NbboQuote(bid, ask, now)


@dataclass(frozen=True)
class ConsolidatedQuote:
	"""What the SIP broadcasts: the NBBO plus the venue quotes behind it."""
	instrument_id: str
	nbbo: NbboQuote
	venue_quotes: Tuple = ()
	ts: int = 0

	def away(self, venue_id):
		"""NBBO computed without the given venue's own quote."""
		return compute_nbbo(self.venue_quotes, self.ts, exclude=venue_id)

	def quote(self, venue_id):
		for q in self.venue_quotes:
			if q.venue_id == venue_id:
				return q
		return None

	def summary(self):
		return F"NBBO {self.instrument_id} {self.nbbo.best_bid} / {self.nbbo.best_ask}"


class SipState:

	def __init__(self, network, sip_latency_us=90, endpoint_id=SIP_ID):
		self.network = network
		self.sip_latency_us = sip_latency_us
		self.endpoint_id = endpoint_id
		self.latest = {}
		self.nbbo = {}
		self.subscribers = []
		network.register(endpoint_id, self.on_event)

	def subscribe(self, endpoint_id):
		if endpoint_id not in self.subscribers:
			self.subscribers.append(endpoint_id)

	def on_event(self, event):
		self.sip_on_l1(event.payload, event.deliver_at)

	def sip_on_l1(self, venue_l1, now):
		book = self.latest.setdefault(venue_l1.instrument_id, {})
		book[venue_l1.venue_id] = venue_l1
		quotes = tuple(book[v] for v in sorted(book))
		nbbo = compute_nbbo(quotes, now)
		self.nbbo[venue_l1.instrument_id] = nbbo
		cq = ConsolidatedQuote(venue_l1.instrument_id, nbbo, quotes, now)
		for sub in self.subscribers:
			self.network.send(self.endpoint_id, sub, cq, now + self.sip_latency_us)
		return cq
