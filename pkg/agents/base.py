# -*- coding: utf-8 -*-
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any

from engine import OrderKind, Side, TimeInForce
from engine.views import BookView, QuoteView
from monitors.records import StalenessSample
from monitors.trace import publish
from simnet import ConsolidatedQuote, ConsumerModel, Wakeup
from simnet.scheduler import describe
from venue.messages import ExecStatus, ExecutionReport, MsgType, OrderMessage, TradePrint

from .capabilities import AgentCapabilities
from .signal import SignalUpdate

log = logging.getLogger("agents")

MARKET_DATA = (QuoteView, BookView, TradePrint, ConsolidatedQuote, SignalUpdate)

# reports after which an order no longer rests anywhere
CLOSING = (ExecStatus.CANCELED, ExecStatus.REJECTED, ExecStatus.ROUTED, ExecStatus.EXPIRED)


@dataclass(frozen=True)
class Processed:
	"""Market data leaving the agent's processing queue."""
	data: Any

	def summary(self):
		return F"processed {describe(self.data)}"


class Agent:
	"""A trader endpoint.

	Market data goes through the agent's ConsumerModel before the strategy
	sees it; execution reports are handled on arrival. Subclasses override
	start, on_market_data, on_report and on_timer.
	"""

	def __init__(self, agent_id, network, capabilities=None):
		self.agent_id = agent_id
		self.network = network
		self.run_id = network.run_id
		self.caps = capabilities or AgentCapabilities()
		self.consumer = ConsumerModel(agent_id, self.caps.processing_rate)
		self.rng = network.streams.generator(F"agent:{agent_id}")
		self.cash = 0
		self.position = Counter()
		self.live = {}
		self.filled = Counter()
		self.sent = Counter()
		self.quotes = {}
		self.books = {}
		self.nbbo = {}
		network.register(agent_id, self.on_event)

	def start(self, now=0):
		pass

	def on_event(self, event):
		payload = event.payload
		now = event.deliver_at
		if isinstance(payload, ExecutionReport):
			self._account(payload)
			self.on_report(payload, now)
		elif isinstance(payload, MARKET_DATA):
			done = self.consumer.ingest(payload.ts, now)
			if done > now:
				self.network.local(self.agent_id, done, Processed(payload))
			else:
				self._consume(payload, now)
		elif isinstance(payload, Processed):
			self._consume(payload.data, now)
		elif isinstance(payload, Wakeup):
			self.on_timer(payload, now)
		else:
			log.warning(F"{self.agent_id}: ignoring {describe(payload)}")

	def _consume(self, data, now):
		staleness = self.consumer.staleness(now)
		if staleness is not None and not isinstance(data, SignalUpdate):
			publish(self.run_id, "observation", StalenessSample(now, self.agent_id, staleness, self.consumer.backlog(now)))
		if isinstance(data, QuoteView):
			self.quotes[(data.venue_id, data.instrument_id)] = data
		elif isinstance(data, BookView):
			self.books[(data.venue_id, data.instrument_id)] = data
		elif isinstance(data, ConsolidatedQuote):
			self.nbbo[data.instrument_id] = data
		self.on_market_data(data, now)

	def on_market_data(self, data, now):
		pass

	def on_report(self, report, now):
		pass

	def on_timer(self, wakeup, now):
		pass

	def _account(self, report):
		if report.status is ExecStatus.FILL:
			signed = report.qty if report.side is Side.BUY else -report.qty
			self.position[report.instrument_id] += signed
			self.cash -= signed * report.price
			self.filled[report.order_id] += report.qty
		if report.status in CLOSING or (report.status is ExecStatus.FILL and report.leaves_qty == 0):
			self.live.pop(report.order_id, None)

	def observe(self, record):
		publish(self.run_id, "observation", record)

	# order entry

	def submit(self, venue_id, instrument_id, side, qty, price=None, kind=OrderKind.LIMIT, tif=TimeInForce.DAY, now=None, **extra):
		self.caps.check(kind)
		now = self.network.now if now is None else now
		msg = OrderMessage(
			msg_type=MsgType.NEW,
			order_id=self.network.next_id(),
			participant_id=self.agent_id,
			venue_id=venue_id,
			instrument_id=instrument_id,
			side=side,
			kind=kind,
			limit_price=price,
			qty=qty,
			tif=tif,
			claimed_submit_ts=now,
			**extra,
		)
		self.network.send(self.agent_id, venue_id, msg, now)
		self.live[msg.order_id] = msg
		self.sent["new"] += 1
		return msg

	def cancel(self, order_id, now=None):
		original = self.live.get(order_id)
		if original is None:
			log.debug(F"{self.agent_id}: cancel for order {order_id} that is no longer live")
			return None
		now = self.network.now if now is None else now
		msg = OrderMessage(MsgType.CANCEL, order_id, self.agent_id, original.venue_id, original.instrument_id, claimed_submit_ts=now)
		self.network.send(self.agent_id, original.venue_id, msg, now)
		self.sent["cancel"] += 1
		return msg

	def modify(self, order_id, new_price=None, new_qty=None, now=None):
		original = self.live.get(order_id)
		if original is None:
			return None
		now = self.network.now if now is None else now
		msg = OrderMessage(MsgType.MODIFY, order_id, self.agent_id, original.venue_id, original.instrument_id, claimed_submit_ts=now, new_price=new_price, new_qty=new_qty)
		self.network.send(self.agent_id, original.venue_id, msg, now)
		self.sent["modify"] += 1
		return msg

	def schedule(self, at, tag, *data):
		return self.network.local(self.agent_id, at, Wakeup(tag, tuple(data)))

	def marked_pnl(self, values):
		"""Cash plus inventory marked at values[instrument]."""
		return self.cash + sum(qty * values.get(inst, 0) for inst, qty in self.position.items())
