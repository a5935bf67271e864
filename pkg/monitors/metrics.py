# -*- coding: utf-8 -*-
"""The per-run metrics report."""
import logging
from dataclasses import asdict, dataclass, field
from typing import Optional

from .audit import audit_queue_integrity
from .frames import conservation, pnl_by_participant, trades_frame
from .measures import (
	flag_anonymity, flag_confidentiality, flag_fair_access, flag_info_symmetry, flag_trading_integrity,
	measure_anonymity, measure_confidentiality, measure_fair_access, measure_info_symmetry, order_to_trade_ratios,
)
from .records import ScalpRecord, SignalJump, SnipeCapture

log = logging.getLogger("monitors.metrics")


@dataclass
class MonitorSettings:
	otr_threshold: float = 50
	otr_window_us: int = 1000000
	staleness_threshold_us: int = 10000
	# how many standard errors above chance fingerprinting must score
	anonymity_z: float = 3.0
	queue_whitelist: tuple = ()
	fair_access_groups: tuple = ()
	fingerprint_population: Optional[tuple] = None


@dataclass
class MetricsReport:
	pnl: dict = field(default_factory=dict)
	pnl_total: int = 0
	trades: int = 0
	snipe_jumps: int = 0
	snipe_captures: int = 0
	snipe_capture_rate: float = 0.0
	scalp_markups: list = field(default_factory=list)
	scalp_markup_total: int = 0
	hidden_orders: int = 0
	ping_detections: int = 0
	detection_rate: float = 0.0
	mean_lead_time_us: Optional[float] = None
	anonymous_orders: int = 0
	fingerprint_guesses: int = 0
	fingerprint_accuracy: float = 0.0
	fingerprint_precision: float = 0.0
	fingerprint_chance: float = 0.0
	fingerprint_standard_error: float = 0.0
	rank_inversions: int = 0
	staleness: dict = field(default_factory=dict)
	order_to_trade: dict = field(default_factory=dict)
	otr_flagged: list = field(default_factory=list)
	fair_access: dict = field(default_factory=dict)
	feed_counts: dict = field(default_factory=dict)
	conservation: dict = field(default_factory=dict)
	trace_hash: str = ""

	def to_dict(self):
		return asdict(self)


def feed_counts(trace):
	"""Messages published per venue and channel."""
	res = {}
	for f in trace.data("feed"):
		entry = res.setdefault(f.venue_id, {"l1": 0, "l2": 0, "prints": 0})
		entry[f.channel] += 1
	return res


def build_metrics(trace, values, settings=None, trace_hash="", skip_venues=()):
	"""Everything metrics.json reports, plus the violations that go to violations.json.

	values maps instrument to the final fundamental value used to mark
	inventory. Returns (MetricsReport, violations).
	"""
	settings = settings or MonitorSettings()
	trades = trades_frame(trace)
	report = MetricsReport(trace_hash=trace_hash, trades=len(trades))
	report.pnl = pnl_by_participant(trades, values)
	report.pnl_total = sum(report.pnl.values())
	jumps = trace.data("observation", SignalJump)
	captures = trace.data("observation", SnipeCapture)
	report.snipe_jumps = len(jumps)
	report.snipe_captures = len(captures)
	report.snipe_capture_rate = len({c.jump_ts for c in captures}) / len(jumps) if jumps else 0.0
	scalps = trace.data("observation", ScalpRecord)
	report.scalp_markups = [s.ask_price - s.buy_price for s in scalps]
	report.scalp_markup_total = sum((s.ask_price - s.buy_price) * s.bought_qty for s in scalps)
	confidentiality = measure_confidentiality(trace)
	report.hidden_orders = confidentiality.hidden_orders
	report.ping_detections = confidentiality.detected
	report.detection_rate = confidentiality.detection_rate
	report.mean_lead_time_us = confidentiality.mean_lead_us
	population = settings.fingerprint_population
	anonymity = measure_anonymity(trace, participants=set(population) if population else None)
	report.anonymous_orders = anonymity.anonymous_orders
	report.fingerprint_guesses = anonymity.guesses
	report.fingerprint_accuracy = anonymity.accuracy
	report.fingerprint_precision = anonymity.precision
	report.fingerprint_chance = anonymity.chance
	report.fingerprint_standard_error = anonymity.standard_error
	violations = audit_queue_integrity(trace, settings.queue_whitelist, skip_venues)
	report.rank_inversions = len(violations)
	otr_violations = flag_trading_integrity(trace, settings.otr_threshold, settings.otr_window_us)
	violations.extend(otr_violations)
	report.otr_flagged = sorted({v.subjects[0] for v in otr_violations})
	violations.extend(flag_fair_access(trace))
	violations.extend(flag_info_symmetry(trace, settings.staleness_threshold_us))
	violations.extend(flag_anonymity(anonymity, settings.anonymity_z))
	violations.extend(flag_confidentiality(confidentiality))
	report.order_to_trade = order_to_trade_ratios(trace)
	report.staleness = measure_info_symmetry(trace)
	report.fair_access = measure_fair_access(trades, values, settings.fair_access_groups)
	report.feed_counts = feed_counts(trace)
	report.conservation = conservation(trace, trades)
	log.info(F"metrics: {report.trades} trades, {len(violations)} violations")
	return report, violations
