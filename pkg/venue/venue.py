# -*- coding: utf-8 -*-
"""A trading venue as a simulation endpoint.

Messages arrive at the gateway, wait out the inbound speed bump and then
reach the matching engine. Market data (L1 to the SIP and direct
subscribers, L2 and prints) and execution reports leave through the
outbound bump.
"""
import dataclasses
import logging
import math
from collections import Counter, deque

from engine import (
	EngineError, OrderBook, OrderKind, Side, TimeInForce, Trade,
	accumulate_order, best_quotes, book_snapshot, cancel_order, clear_batch_auction,
	amend_order, crosses, discretion_reach, discretionary_probe, insert_order, match, modify_order, validate_order,
)
from engine.views import GENERIC_ID
from monitors.records import FeedRecord, GatewayRecord
from monitors.trace import publish
from simnet import SIP_ID, ConsolidatedQuote, NbboQuote, Wakeup
from simnet.scheduler import describe

from .errors import MalformedMessage, VenueError
from .lock_cross import Protection, apply_order_protection, day_iso_priority, handle_lock_cross, on_unlock
from .messages import EngineWork, ExecStatus, ExecutionReport, MsgType, OrderMessage, TradePrint

log = logging.getLogger("venue")

CHANNELS = ("l1", "l2", "prints")


class Venue:

	def __init__(self, config, network, instruments, l2_depth=10, generic_id=GENERIC_ID, sip_id=SIP_ID):
		problems = config.problems()
		if problems:
			raise VenueError("; ".join(F"{config.venue_id}.{field}: {msg}" for field, msg in problems))
		self.config = config
		self.venue_id = config.venue_id
		self.network = network
		self.run_id = network.run_id
		self.l2_depth = l2_depth
		self.generic_id = generic_id
		self.sip_id = sip_id
		self.books = {}
		for instrument_id in instruments:
			self.books[instrument_id] = OrderBook(
				instrument_id,
				venue_id=self.venue_id,
				algo=config.matching_algo,
				round_lot=config.round_lot,
				pro_rata_min_alloc=config.pro_rata_min_alloc,
				pro_rata_max_alloc=config.pro_rata_max_alloc,
				rng_for=network.streams.generator,
			)
		# every order this venue accepted, resting or not
		self.orders = {}
		self.away = {i: NbboQuote() for i in self.books}
		self.subscribers = {c: [] for c in CHANNELS}
		self.bump_rng = network.streams.generator(F"bump:{self.venue_id}")
		self.rate_windows = {}
		self.engine_free_at = 0
		self.held_reports = []
		self.held_prints = []
		self.last_l1 = {}
		self.last_l2 = {}
		self.stats = Counter()
		network.register(self.venue_id, self.on_event)

	def subscribe(self, channel, endpoint_id):
		if channel not in self.subscribers:
			raise VenueError(F"{self.venue_id} has no {channel} feed")
		if endpoint_id not in self.subscribers[channel]:
			self.subscribers[channel].append(endpoint_id)

	def start(self, now=0):
		"""Arm the periodic timers: batch auctions and interval feeds."""
		if self.config.is_batch:
			self.network.local(self.venue_id, now + self.config.batch_interval_us, Wakeup("auction"))
		if self.config.l1_interval_us and not self.config.dark:
			self.network.local(self.venue_id, now + self.config.l1_interval_us, Wakeup("l1"))
		if self.config.l2_interval_us:
			self.network.local(self.venue_id, now + self.config.l2_interval_us, Wakeup("l2"))

	def book(self, instrument_id):
		return self.books[instrument_id]

	def on_event(self, event):
		payload = event.payload
		now = event.deliver_at
		if isinstance(payload, OrderMessage):
			self.gateway_receive(payload, now)
		elif isinstance(payload, EngineWork):
			self.process(payload.message, now)
		elif isinstance(payload, ConsolidatedQuote):
			self.on_nbbo(payload, now)
		elif isinstance(payload, Wakeup):
			self.on_timer(payload, now)
		else:
			log.warning(F"{self.venue_id}: ignoring {describe(payload)}")

	# gateway

	def gateway_receive(self, msg, now):
		"""Accept a message at arrival time now and schedule it for the engine.

		Returns the engine Event, or None when the message was rejected at
		the gateway.
		"""
		try:
			msg.validate()
		except MalformedMessage as e:
			log.warning(F"{self.venue_id}: malformed message from {msg.participant_id}: {e}")
			self._gateway_record(msg, now, False, "malformed")
			self._reject(msg, now, "malformed")
			return None
		if self._rate_limited(msg.participant_id, now):
			log.debug(F"{self.venue_id}: rate limit hit by {msg.participant_id}")
			self._gateway_record(msg, now, False, "rate_limit")
			self._reject(msg, now, "rate_limit")
			return None
		effective = now + self.bump_in(msg)
		if self.config.engine_msgs_per_ms:
			start = max(effective, self.engine_free_at)
			self.engine_free_at = start + int(math.ceil(1000 / self.config.engine_msgs_per_ms))
			effective = start
		self._gateway_record(msg, now, True, "", effective)
		return self.network.local(self.venue_id, effective, EngineWork(msg, now))

	def bump_in(self, msg):
		if msg.msg_type is MsgType.CANCEL and self.config.bump_exempt_cancels:
			return 0
		if msg.routed_from is not None and self.config.bump_exempt_routed:
			return 0
		bump = self.config.speed_bump_in_us
		if self.config.speed_bump_jitter_us:
			bump += int(self.bump_rng.integers(0, self.config.speed_bump_jitter_us + 1))
		return bump

	def _rate_limited(self, participant_id, now):
		limit = self.config.max_msgs_per_ms
		if not limit:
			return False
		window = self.rate_windows.setdefault(participant_id, deque())
		while window and window[0] <= now - 1000:
			window.popleft()
		if len(window) >= limit:
			return True
		window.append(now)
		return False

	def _gateway_record(self, msg, now, accepted, reason, effective=None):
		publish(self.run_id, "order", GatewayRecord(
			ts=now,
			venue_id=self.venue_id,
			participant_id=msg.participant_id,
			msg_type=msg.msg_type.value,
			order_id=msg.order_id,
			accepted=accepted,
			reason=reason,
			order_kind=msg.kind.value if msg.msg_type is MsgType.NEW else "",
			anonymous=msg.anonymous,
			claimed_submit_ts=msg.claimed_submit_ts,
			effective_ts=now if effective is None else effective,
			routed_from=msg.routed_from,
		))

	# engine

	def process(self, msg, now):
		book = self.books.get(msg.instrument_id)
		if book is None:
			log.warning(F"{self.venue_id}: order {msg.order_id} for unknown instrument {msg.instrument_id}")
			self._reject(msg, now, "unknown instrument")
			return
		if msg.msg_type is MsgType.NEW:
			self._new(book, msg, now)
		elif msg.msg_type is MsgType.CANCEL:
			self._cancel(book, msg, now)
		else:
			self._modify(book, msg, now)
		self._after(book, now)

	def _new(self, book, msg, now):
		order = msg.to_order()
		if order.order_id in self.orders:
			self._reject(msg, now, "duplicate order id")
			return
		try:
			if self.config.is_batch:
				accumulate_order(book, order, now)
				trades, outcome = [], "rest"
			elif order.kind is OrderKind.DAY_ISO:
				trades, resting = insert_order(book, order, now)
				outcome = "drop"
				if resting is not None:
					day_iso_priority(book, order, now)
					outcome = "rest"
			else:
				trades, outcome = self._continuous(book, order, now)
		except EngineError as e:
			log.debug(F"{self.venue_id}: rejected order {order.order_id}: {e}")
			self._reject(msg, now, str(e) or type(e).__name__)
			return
		self.orders[order.order_id] = order
		self._fill_reports(trades, now)
		self._unrested_report(order, outcome, now)
		if outcome == "rest" and order.tif is TimeInForce.GTT and order.order_id in book.orders:
			self.network.local(self.venue_id, max(order.expire_at, now), Wakeup("expire", (order.instrument_id, order.order_id)))

	def _continuous(self, book, order, now):
		"""Protected matching for one arriving order; returns (trades, outcome).

		outcome is rest, drop, filled, route or reject.
		"""
		validate_order(book, order)
		book.seen_ids.add(order.order_id)
		book.stamp(order, now)
		self.orders[order.order_id] = order
		return self._execute(book, order, now)

	def _execute(self, book, order, now, reason="insert"):
		"""Trade an order that is off the book under order protection, then rest what is left."""
		away = self.away[book.instrument_id]
		trades = []
		decision = None
		while order.open_qty > 0:
			local_best = book.best_price(order.side.opposite)
			marketable = local_best is not None and crosses(order, local_best)
			decision = apply_order_protection(order, away, local_best if marketable else None, self.config.protection_policy)
			if decision.action is not Protection.EXECUTE or not marketable:
				break
			trades.extend(match(book, order, now, limit=local_best))
		action = decision.action if decision is not None else Protection.EXECUTE
		if action is Protection.ROUTE:
			self.route(order, decision, now)
			return trades, "route"
		if action is Protection.REJECT:
			return trades, "reject"
		if order.kind is OrderKind.DISCRETIONARY and order.open_qty > 0:
			trades.extend(self._discretionary(book, order, away, now))
		if order.open_qty == 0:
			return trades, "filled"
		if order.kind is OrderKind.MARKET or order.tif is TimeInForce.IOC:
			return trades, "drop"
		order.displayed_qty = order.initial_display()
		adjusted = handle_lock_cross(order, away)
		book.rest(order, now, adjusted or reason)
		return trades, "rest"

	def _discretionary(self, book, order, away, now):
		"""Fills inside the discretionary range, one level at a time, stopping short of a trade-through."""
		reach = discretion_reach(order)
		trades = []
		while order.open_qty > 0:
			local_best = book.best_price(order.side.opposite)
			if local_best is None or not crosses(order, local_best, limit=reach):
				break
			decision = apply_order_protection(order, away, local_best, self.config.protection_policy, limit=reach)
			if decision.action is not Protection.EXECUTE:
				log.debug(F"{self.venue_id}: discretion of order {order.order_id} stops at {local_best}, {decision.away_venue} shows {decision.away_price}")
				break
			fills = discretionary_probe(book, order, now, limit=local_best)
			if not fills:
				break
			trades.extend(fills)
		return trades

	def route(self, order, decision, now):
		"""Send an order's remainder to the venue quoting the better away price."""
		child_id = self.network.next_id()
		child = OrderMessage(
			msg_type=MsgType.NEW,
			order_id=child_id,
			participant_id=order.participant_id,
			venue_id=decision.away_venue,
			instrument_id=order.instrument_id,
			side=order.side,
			kind=OrderKind.MARKET if order.kind is OrderKind.MARKET else OrderKind.LIMIT,
			limit_price=order.limit_price,
			qty=order.open_qty,
			anonymous=order.anonymous,
			tif=order.tif,
			expire_at=order.expire_at,
			claimed_submit_ts=now,
			routable=False,
			routed_from=self.venue_id,
		)
		log.debug(F"{self.venue_id}: routing {order.open_qty} of order {order.order_id} to {decision.away_venue} as {child_id}")
		self.network.send(self.venue_id, decision.away_venue, child, now)
		self.emit_execution_report(self._report(order, ExecStatus.ROUTED, now, leaves=0, routed_to=decision.away_venue, child=child_id), now)
		return child

	def _cancel(self, book, msg, now):
		order = book.orders.get(msg.order_id)
		if order is None or order.participant_id != msg.participant_id:
			self._reject(msg, now, "unknown order")
			return
		cancel_order(book, msg.order_id, now)
		self.emit_execution_report(self._report(order, ExecStatus.CANCELED, now, leaves=0), now)

	def _modify(self, book, msg, now):
		"""Amend in place, or take the order off and send it back in like a new arrival."""
		order = book.orders.get(msg.order_id)
		if order is None or order.participant_id != msg.participant_id:
			self._reject(msg, now, "unknown order")
			return
		try:
			if self.config.is_batch:
				order, _ = modify_order(book, msg.order_id, msg.new_price, msg.new_qty, now, allow_match=False)
				reentered = False
			else:
				order, reentered = amend_order(book, msg.order_id, msg.new_price, msg.new_qty, now)
		except EngineError as e:
			self._reject(msg, now, str(e) or type(e).__name__)
			return
		self.emit_execution_report(self._report(order, ExecStatus.REPLACED, now), now)
		if not reentered:
			return
		trades, outcome = self._reenter(book, order, now)
		self._fill_reports(trades, now)
		self._unrested_report(order, outcome, now)

	def _reenter(self, book, order, now):
		if order.kind is OrderKind.DAY_ISO:
			trades = match(book, order, now)
			if order.open_qty == 0:
				return trades, "filled"
			order.displayed_qty = order.initial_display()
			book.rest(order, now, "modify")
			day_iso_priority(book, order, now)
			return trades, "rest"
		return self._execute(book, order, now, "modify")

	def _unrested_report(self, order, outcome, now):
		if outcome == "drop" and order.open_qty > 0:
			self.emit_execution_report(self._report(order, ExecStatus.CANCELED, now, reason="unfilled"), now)
		elif outcome == "reject":
			self.emit_execution_report(self._report(order, ExecStatus.REJECTED, now, reason="trade-through"), now)

	def on_nbbo(self, cq, now):
		if cq.instrument_id not in self.books:
			return
		away = cq.away(self.venue_id)
		self.away[cq.instrument_id] = away
		book = self.books[cq.instrument_id]
		if not self.config.is_batch:
			on_unlock(book, away, now)
		self._after(book, now)

	def on_timer(self, wakeup, now):
		if wakeup.tag == "auction":
			for book in self.books.values():
				price, trades = clear_batch_auction(book, now)
				self._fill_reports(trades, now)
				self._after(book, now)
			self.network.local(self.venue_id, now + self.config.batch_interval_us, Wakeup("auction"))
		elif wakeup.tag == "l1":
			for book in self.books.values():
				self.publish_l1(best_quotes(book, now), now)
			self.network.local(self.venue_id, now + self.config.l1_interval_us, Wakeup("l1"))
		elif wakeup.tag == "l2":
			if not self.config.dark:
				for book in self.books.values():
					self.publish_l2(book_snapshot(book, self.l2_depth, now, self.generic_id), now)
			self.flush(now)
			self.network.local(self.venue_id, now + self.config.l2_interval_us, Wakeup("l2"))
		elif wakeup.tag == "expire":
			instrument_id, order_id = wakeup.data
			book = self.books[instrument_id]
			if order_id in book.orders:
				order = cancel_order(book, order_id, now, "expired")
				self.emit_execution_report(self._report(order, ExecStatus.EXPIRED, now, leaves=0), now)
				self._after(book, now)
		else:
			log.warning(F"{self.venue_id}: unknown timer {wakeup.tag}")

	def _after(self, book, now):
		"""Publish journal entries and any on-change market data."""
		for event in book.drain_journal():
			if isinstance(event, Trade):
				publish(self.run_id, "trade", event)
				continue
			publish(self.run_id, "book", event)
			if event.action == "remove" and event.reason == "ioc":
				order = self.orders.get(event.order_id)
				if order is not None:
					self.emit_execution_report(self._report(order, ExecStatus.CANCELED, now, leaves=0, reason="unfilled"), now)
		self.publish_feeds(book, now)

	# market data and reports

	def publish_feeds(self, book, now):
		"""On-change publication for the feeds that have no interval."""
		if self.config.dark:
			return
		if not self.config.l1_interval_us:
			quote = best_quotes(book, now)
			key = (quote.bid, quote.bid_qty, quote.ask, quote.ask_qty)
			if self.last_l1.get(book.instrument_id) != key:
				self.last_l1[book.instrument_id] = key
				self.publish_l1(quote, now)
		if not self.config.l2_interval_us:
			snap = book_snapshot(book, self.l2_depth, now, self.generic_id)
			key = (snap.bids, snap.asks)
			if self.last_l2.get(book.instrument_id) != key:
				self.last_l2[book.instrument_id] = key
				self.publish_l2(snap, now)

	def publish_l1(self, quote, now):
		if self.config.dark:
			return
		out = now + self.config.speed_bump_out_us
		recipients = list(self.subscribers["l1"])
		if self.sip_id in self.network.endpoints:
			recipients.insert(0, self.sip_id)
		for dst in recipients:
			self.network.send(self.venue_id, dst, quote, out)
		self.stats["l1"] += 1
		publish(self.run_id, "feed", FeedRecord(out, self.venue_id, quote.instrument_id, "l1", len(recipients)))

	def publish_l2(self, snap, now):
		out = now + self.config.speed_bump_out_us
		for dst in self.subscribers["l2"]:
			self.network.send(self.venue_id, dst, snap, out)
		self.stats["l2"] += 1
		publish(self.run_id, "feed", FeedRecord(out, self.venue_id, snap.instrument_id, "l2", len(self.subscribers["l2"])))

	def publish_print(self, trade_print, now):
		if self.config.l2_interval_us:
			self.held_prints.append(trade_print)
			return
		self._send_prints([trade_print], now)

	def _send_prints(self, prints, now):
		out = now + self.config.speed_bump_out_us
		for p in prints:
			p = dataclasses.replace(p, ts=out)
			for dst in self.subscribers["prints"]:
				self.network.send(self.venue_id, dst, p, out)
			self.stats["prints"] += 1
			publish(self.run_id, "feed", FeedRecord(out, self.venue_id, p.instrument_id, "prints", len(self.subscribers["prints"]), (p.trade_id,)))

	def flush(self, now):
		"""Release prints and reports held for the next L2 tick."""
		prints, self.held_prints = self.held_prints, []
		self._send_prints(prints, now)
		reports, self.held_reports = self.held_reports, []
		for report in reports:
			self._deliver(report, now)

	def emit_execution_report(self, report, now):
		publish(self.run_id, "report", report)
		if not self.config.exec_report_immediate and self.config.l2_interval_us:
			self.held_reports.append(report)
			return
		self._deliver(report, now)

	def _deliver(self, report, now):
		if report.participant_id not in self.network.endpoints:
			log.debug(F"{self.venue_id}: no endpoint for {report.participant_id}, dropping {report.summary()}")
			return
		self.network.send(self.venue_id, report.participant_id, report, now + self.config.speed_bump_out_us)

	def _report(self, order, status, now, leaves=None, routed_to=None, child=None, reason=""):
		return ExecutionReport(
			order_id=order.order_id,
			participant_id=order.participant_id,
			venue_id=self.venue_id,
			status=status,
			ts=now,
			leaves_qty=order.open_qty if leaves is None else leaves,
			price=order.limit_price,
			instrument_id=order.instrument_id,
			side=order.side,
			routed_to=routed_to,
			child_order_id=child,
			reason=reason,
		)

	def _reject(self, msg, now, reason):
		self.emit_execution_report(ExecutionReport(
			order_id=msg.order_id,
			participant_id=msg.participant_id,
			venue_id=self.venue_id,
			status=ExecStatus.REJECTED,
			ts=now,
			instrument_id=msg.instrument_id,
			side=msg.side,
			reason=reason,
		), now)

	def _fill_reports(self, trades, now):
		"""Fill reports for both sides of every trade, plus the public prints."""
		if not trades:
			return
		fills = Counter()
		for t in trades:
			fills[t.maker_order_id] += t.qty
			fills[t.taker_order_id] += t.qty
		remaining = {oid: self.orders[oid].open_qty + qty for oid, qty in fills.items()}
		for t in trades:
			for oid, maker in ((t.maker_order_id, True), (t.taker_order_id, False)):
				remaining[oid] -= t.qty
				order = self.orders[oid]
				self.emit_execution_report(ExecutionReport(
					order_id=oid,
					participant_id=order.participant_id,
					venue_id=self.venue_id,
					status=ExecStatus.FILL,
					ts=now,
					qty=t.qty,
					price=t.price,
					leaves_qty=remaining[oid],
					instrument_id=t.instrument_id,
					side=order.side,
					trade_id=t.trade_id,
					maker=maker,
				), now)
			self.publish_print(self._print(t), now)

	def _print(self, trade):
		taker, maker = self.orders[trade.taker_order_id], self.orders[trade.maker_order_id]
		buyer, seller = (taker, maker) if trade.aggressor_side is Side.BUY else (maker, taker)
		return TradePrint(
			venue_id=self.venue_id,
			instrument_id=trade.instrument_id,
			trade_id=trade.trade_id,
			price=trade.price,
			qty=trade.qty,
			trade_ts=trade.ts,
			aggressor_side=trade.aggressor_side,
			buyer_id=self.generic_id if buyer.anonymous else buyer.participant_id,
			seller_id=self.generic_id if seller.anonymous else seller.participant_id,
		)
