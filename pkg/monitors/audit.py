# -*- coding: utf-8 -*-
"""Queue-integrity audit against plain price-time priority.

The auditor replays book events and trades from the trace. An order's
reference key is the (entry_ts, entry_seq) it had when it last rested, or
last lost priority to a replenish or a modify; venue-side adjustments such
as slides, reverts, relights, hides and ISO promotions do not move it.
Every execution whose maker has an earlier-keyed open order at the same
venue, side, reference price and class is one violation.
"""
import logging
from dataclasses import dataclass

from engine import DisplayClass, OrderKind

from .violations import Property, Violation

log = logging.getLogger("monitors.audit")

RANKING_REASONS = ("replenish", "modify")


@dataclass
class _Open:
	order_id: int
	participant_id: str
	side: object
	kind: OrderKind
	ref_price: int
	ref_class: DisplayClass
	ref_key: tuple
	event_id: int


def _ref_class(kind):
	return DisplayClass.HIDDEN if kind is OrderKind.HIDDEN else DisplayClass.LIT


def audit_queue_integrity(trace, whitelist=(), skip_venues=()):
	"""Violations for executions that jumped an earlier order at the same reference price.

	whitelist holds order kinds (or their values) whose executions are
	documented exceptions; skip_venues are venues that do not allocate by
	time, such as pro-rata books.
	"""
	allowed = {OrderKind(k) if isinstance(k, str) else k for k in whitelist}
	books = {}
	violations = []
	for rec in trace.records:
		if rec.topic == "book":
			e = rec.data
			book = books.setdefault((e.venue_id, e.instrument_id), {})
			if e.action == "rest":
				book[e.order_id] = _Open(e.order_id, e.participant_id, e.side, e.order_kind, e.ref_price, _ref_class(e.order_kind), (e.entry_ts, e.entry_seq), rec.event_id)
			elif e.action == "rerank" and e.order_id in book:
				if e.reason in RANKING_REASONS:
					book[e.order_id].ref_key = (e.entry_ts, e.entry_seq)
					book[e.order_id].ref_price = e.ref_price
					book[e.order_id].event_id = rec.event_id
			elif e.action == "remove":
				book.pop(e.order_id, None)
		elif rec.topic == "trade":
			t = rec.data
			if t.venue_id in skip_venues:
				continue
			book = books.get((t.venue_id, t.instrument_id), {})
			maker = book.get(t.maker_order_id)
			if maker is None or maker.kind in allowed:
				continue
			ahead = sorted(
				(o for o in book.values()
					if o.order_id != maker.order_id
					and o.side is maker.side
					and o.ref_price == maker.ref_price
					and o.ref_class is maker.ref_class
					and o.ref_key < maker.ref_key),
				key=lambda o: o.ref_key,
			)
			if not ahead:
				continue
			violations.append(Violation(
				Property.QUEUE_INTEGRITY,
				t.ts,
				(maker.participant_id, ahead[0].participant_id),
				{
					"venue": t.venue_id,
					"instrument": t.instrument_id,
					"trade_id": t.trade_id,
					"maker_order": maker.order_id,
					"maker_kind": maker.kind.value,
					"price": t.price,
					"ref_price": maker.ref_price,
					"jumped_orders": [o.order_id for o in ahead],
				},
				(rec.event_id, maker.event_id, ahead[0].event_id),
			))
	if violations:
		log.info(F"queue integrity: {len(violations)} executions out of reference order")
	return violations
