# -*- coding: utf-8 -*-
"""Per-property measurements over a finished trace."""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from .frames import pnl_by_participant
from .records import FingerprintGuess, GatewayRecord, HiddenLiquidityBelief, ScalpRecord, SignalJump, SnipeCapture, StalenessSample
from .violations import Property, Violation

log = logging.getLogger("monitors.measures")


@dataclass
class AnonymityReport:
	anonymous_orders: int = 0
	guesses: int = 0
	correct: int = 0
	chance: float = 0.0
	guessers: set = field(default_factory=set)
	last_guess_ts: int = 0
	# event ids of the correct guesses
	correct_event_ids: list = field(default_factory=list)

	@property
	def accuracy(self):
		return self.correct / self.anonymous_orders if self.anonymous_orders else 0.0

	@property
	def precision(self):
		return self.correct / self.guesses if self.guesses else 0.0

	@property
	def abstention(self):
		return 1 - self.guesses / self.anonymous_orders if self.anonymous_orders else 0.0

	@property
	def standard_error(self):
		"""Standard error of accuracy under pure guessing at chance."""
		if not self.anonymous_orders:
			return 0.0
		return math.sqrt(self.chance * (1 - self.chance) / self.anonymous_orders)


def _observations(trace, kind, given):
	"""(event id, record) pairs; records passed in directly have no event id."""
	if given is None:
		return [(r.event_id, r.data) for r in trace.of("observation", kind)]
	return [(None, g) for g in given]


def measure_anonymity(trace, guesses=None, participants=None):
	"""Score fingerprint guesses against who really sent each anonymous order.

	participants restricts the population (and the chance baseline) to the
	given ids; by default it is everyone who sent an anonymous order.
	"""
	truth = {}
	for r in trace.data("order", GatewayRecord):
		if r.msg_type == "new" and r.accepted and r.anonymous:
			if participants is None or r.participant_id in participants:
				truth[r.order_id] = r.participant_id
	latest = {}
	for event_id, g in _observations(trace, FingerprintGuess, guesses):
		if g.order_id in truth:
			latest[g.order_id] = (event_id, g)
	population = set(participants) if participants is not None else set(truth.values())
	report = AnonymityReport(anonymous_orders=len(truth), chance=1 / len(population) if population else 0.0)
	for order_id, (event_id, g) in latest.items():
		if g.guess is None:
			continue
		report.guesses += 1
		report.guessers.add(g.participant_id)
		report.last_guess_ts = max(report.last_guess_ts, g.ts)
		if g.guess == truth[order_id]:
			report.correct += 1
			if event_id is not None:
				report.correct_event_ids.append(event_id)
	return report


def flag_anonymity(report, z=3.0):
	"""A violation when fingerprinting beats chance by more than z standard errors."""
	if not report.guesses or report.accuracy - report.chance <= z * report.standard_error:
		return []
	return [Violation(
		Property.PARTICIPANT_ANONYMITY,
		report.last_guess_ts,
		tuple(sorted(report.guessers)),
		{
			"anonymous_orders": report.anonymous_orders,
			"guesses": report.guesses,
			"accuracy": report.accuracy,
			"chance": report.chance,
			"standard_error": report.standard_error,
		},
		tuple(report.correct_event_ids),
	)]


@dataclass(frozen=True)
class Detection:
	"""A hidden order inferred before the tape showed it."""
	venue_id: str
	order_id: int
	owner: str
	belief: HiddenLiquidityBelief
	event_ids: tuple
	lead_us: Optional[int] = None


@dataclass
class ConfidentialityReport:
	hidden_orders: int = 0
	detections: list = field(default_factory=list)

	@property
	def detected(self):
		return len(self.detections)

	@property
	def lead_times_us(self):
		return [d.lead_us for d in self.detections if d.lead_us is not None]

	@property
	def detection_rate(self):
		return self.detected / self.hidden_orders if self.hidden_orders else 0.0

	@property
	def mean_lead_us(self) -> Optional[float]:
		leads = self.lead_times_us
		return float(np.mean(leads)) if leads else None


@dataclass
class _Hidden:
	venue_id: str
	instrument_id: str
	side: str
	owner: str
	prices: set
	rested_at: int
	rest_event_id: int
	removed_at: Optional[int] = None
	revealed_at: Optional[int] = None


def _hidden_orders(trace):
	hidden = {}
	trade_orders = {}
	for rec in trace.records:
		if rec.topic == "book":
			e = rec.data
			key = (e.venue_id, e.order_id)
			if e.action in ("rest", "rerank") and e.hidden_liquidity:
				h = hidden.get(key)
				if h is None:
					hidden[key] = _Hidden(e.venue_id, e.instrument_id, e.side.value, e.participant_id, {e.price}, e.ts, rec.event_id)
				else:
					h.prices.add(e.price)
			elif e.action == "remove" and key in hidden and hidden[key].removed_at is None:
				hidden[key].removed_at = e.ts
		elif rec.topic == "trade":
			t = rec.data
			trade_orders[(t.venue_id, t.instrument_id, t.trade_id)] = (t.maker_order_id, t.taker_order_id)
		elif rec.topic == "feed" and rec.data.channel == "prints":
			f = rec.data
			for trade_id in f.trade_ids:
				for order_id in trade_orders.get((f.venue_id, f.instrument_id, trade_id), ()):
					h = hidden.get((f.venue_id, order_id))
					if h is not None and h.revealed_at is None:
						h.revealed_at = f.ts
	return hidden


def measure_confidentiality(trace, beliefs=None):
	"""How many hidden orders an attacker inferred before any public print revealed them.

	A belief detects a hidden order when it names the order's venue, side and
	a price it rested at, was formed while the order rested, and precedes the
	first published print involving the order. Lead time is that print's
	publication time minus the belief time.
	"""
	hidden = _hidden_orders(trace)
	observed = sorted(_observations(trace, HiddenLiquidityBelief, beliefs), key=lambda pair: pair[1].ts)
	report = ConfidentialityReport(hidden_orders=len(hidden))
	for (venue_id, order_id), h in hidden.items():
		for event_id, b in observed:
			if b.venue_id != h.venue_id or b.instrument_id != h.instrument_id or b.side != h.side or b.price not in h.prices:
				continue
			if b.ts < h.rested_at or (h.removed_at is not None and b.ts > h.removed_at):
				continue
			if h.revealed_at is not None and b.ts >= h.revealed_at:
				continue
			event_ids = (h.rest_event_id,) if event_id is None else (h.rest_event_id, event_id)
			lead = h.revealed_at - b.ts if h.revealed_at is not None else None
			report.detections.append(Detection(venue_id, order_id, h.owner, b, event_ids, lead))
			break
	return report


def flag_confidentiality(report):
	"""One violation per hidden order found out ahead of the tape."""
	return [Violation(
		Property.DATA_CONFIDENTIALITY,
		d.belief.ts,
		(d.belief.participant_id, d.owner),
		{"venue_id": d.venue_id, "order_id": d.order_id, "side": d.belief.side, "price": d.belief.price, "lead_us": d.lead_us},
		d.event_ids,
	) for d in report.detections]


def measure_info_symmetry(trace, percentiles=(50, 90, 99)):
	"""Staleness percentiles per agent, in microseconds."""
	samples = trace.data("observation", StalenessSample)
	if not samples:
		return {}
	frame = pd.DataFrame([(s.participant_id, s.staleness_us) for s in samples], columns=["agent", "staleness_us"])
	res = {}
	for agent, group in frame.groupby("agent", sort=True):
		values = group["staleness_us"].to_numpy()
		stats = {F"p{p}": float(np.percentile(values, p)) for p in percentiles}
		stats["max"] = int(values.max())
		stats["mean"] = float(values.mean())
		res[agent] = stats
	return res


def flag_info_symmetry(trace, threshold_us=10000):
	"""One violation per agent whose view of the market fell more than threshold_us behind.

	Cites the first sample over the threshold and the worst one.
	"""
	rows = [(r.event_id, r.ts, r.data.participant_id, r.data.staleness_us, r.data.backlog) for r in trace.of("observation", StalenessSample)]
	frame = pd.DataFrame(rows, columns=["event_id", "ts", "agent", "staleness_us", "backlog"])
	over = frame[frame["staleness_us"] > threshold_us]
	violations = []
	for agent, group in over.groupby("agent", sort=True):
		first = group.iloc[0]
		worst = group.loc[group["staleness_us"].idxmax()]
		violations.append(Violation(
			Property.SYMMETRIC_INFORMATION,
			int(first["ts"]),
			(agent,),
			{"threshold_us": threshold_us, "samples_over": len(group), "max_staleness_us": int(worst["staleness_us"]), "max_backlog": int(group["backlog"].max())},
			tuple(sorted({int(first["event_id"]), int(worst["event_id"])})),
		))
	return violations


def measure_fair_access(trades, values, groups=()):
	"""Fill outcomes and P&L per agent, and the P&L gap inside each group.

	trades is the frame from frames.trades_frame; groups are lists of agents
	running the same strategy with different capabilities.
	"""
	pnl = pnl_by_participant(trades, values)
	fills = {}
	if len(trades):
		long = pd.concat([
			trades[["buyer", "qty"]].rename(columns={"buyer": "agent"}),
			trades[["seller", "qty"]].rename(columns={"seller": "agent"}),
		])
		agg = long.groupby("agent")["qty"].agg(["count", "sum"])
		fills = {agent: {"fills": int(row["count"]), "filled_qty": int(row["sum"])} for agent, row in agg.iterrows()}
	per_agent = {}
	for agent in sorted(set(pnl) | set(fills)):
		per_agent[agent] = {"pnl": pnl.get(agent, 0), **fills.get(agent, {"fills": 0, "filled_qty": 0})}
	gaps = []
	for group in groups:
		values_in_group = [per_agent.get(a, {"pnl": 0})["pnl"] for a in group]
		gaps.append({"agents": list(group), "pnl_gap": max(values_in_group) - min(values_in_group) if values_in_group else 0})
	return {"agents": per_agent, "groups": gaps}


def flag_fair_access(trace):
	"""One violation per stale quote sniped and per routed order scalped.

	Both only happen to participants who are slower than the attacker.
	"""
	jumps = {r.data.ts: r.event_id for r in trace.of("observation", SignalJump)}
	violations = []
	for rec in trace.of("observation", SnipeCapture):
		c = rec.data
		event_ids = (jumps[c.jump_ts], rec.event_id) if c.jump_ts in jumps else (rec.event_id,)
		violations.append(Violation(
			Property.FAIR_MARKET_ACCESS,
			c.ts,
			(c.participant_id,),
			{"technique": "snipe", "venue_id": c.venue_id, "side": c.side, "stale_price": c.stale_price, "fair_value": c.fair_value, "qty": c.qty, "jump_ts": c.jump_ts},
			event_ids,
		))
	for rec in trace.of("observation", ScalpRecord):
		s = rec.data
		violations.append(Violation(
			Property.FAIR_MARKET_ACCESS,
			s.ts,
			(s.participant_id,),
			{"technique": "scalp", "venue_id": s.venue_id, "bought_qty": s.bought_qty, "buy_price": s.buy_price, "ask_price": s.ask_price},
			(rec.event_id,),
		))
	return violations


def _otr_rows(trace):
	rows = []
	for rec in trace.of("order", GatewayRecord):
		if rec.data.msg_type == "new":
			rows.append((rec.data.participant_id, rec.ts, 1, 0, rec.event_id))
	for rec in trace.of("trade"):
		t = rec.data
		for who in sorted({t.buyer_id, t.seller_id}):
			rows.append((who, t.ts, 0, 1, rec.event_id))
	return pd.DataFrame(rows, columns=["participant", "ts", "submits", "trades", "event_id"])


def order_to_trade_windows(trace, window_us=1000000):
	"""Submits and trades per participant per fixed window, with the first event id of each."""
	frame = _otr_rows(trace)
	if frame.empty:
		return frame
	frame["window"] = frame["ts"] // window_us
	return frame.groupby(["participant", "window"], as_index=False).agg(submits=("submits", "sum"), trades=("trades", "sum"), event_id=("event_id", "min"))


def order_to_trade_ratios(trace):
	"""Whole-run submits / max(trades, 1) per participant."""
	frame = _otr_rows(trace)
	if frame.empty:
		return {}
	totals = frame.groupby("participant")[["submits", "trades"]].sum()
	return {p: float(row["submits"] / max(row["trades"], 1)) for p, row in totals.iterrows()}


def flag_trading_integrity(trace, threshold=50, window_us=1000000):
	"""One violation per participant and window whose order-to-trade ratio exceeds threshold."""
	frame = order_to_trade_windows(trace, window_us)
	violations = []
	if frame.empty:
		return violations
	frame["ratio"] = frame["submits"] / frame["trades"].clip(lower=1)
	for row in frame[frame["ratio"] > threshold].sort_values(["participant", "window"]).itertuples(index=False):
		violations.append(Violation(
			Property.TRADING_INTEGRITY,
			int(row.window * window_us),
			(row.participant,),
			{"window_start_us": int(row.window * window_us), "window_us": window_us, "submits": int(row.submits), "trades": int(row.trades), "ratio": float(row.ratio)},
			(int(row.event_id),),
		))
	return violations
