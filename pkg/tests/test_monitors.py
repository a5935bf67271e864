# -*- coding: utf-8 -*-
import pytest

from engine import BookEvent, DisplayClass, OrderKind, Side, Trade, insert_order
from monitors.audit import audit_queue_integrity
from monitors.frames import conservation, pnl_by_participant, positions, trades_frame
from monitors.measures import (
	flag_anonymity, flag_confidentiality, flag_fair_access, flag_info_symmetry, flag_trading_integrity, measure_anonymity,
	measure_confidentiality, measure_info_symmetry, order_to_trade_ratios,
)
from monitors.metrics import MonitorSettings, build_metrics
from monitors.records import (
	FeedRecord, FingerprintGuess, GatewayRecord, HiddenLiquidityBelief, ScalpRecord, SignalJump, SnipeCapture, StalenessSample,
)
from monitors.trace import Trace, publish
from monitors.violations import Property, Violation
from venue.messages import ExecStatus, ExecutionReport


def journal_into(trace, book):
	for item in book.drain_journal():
		trace.append("trade" if isinstance(item, Trade) else "book", item)


def event(action, reason, order_id, participant, entry_ts, entry_seq, kind=OrderKind.LIMIT, price=101, ref_price=101, side=Side.SELL, venue="E1", hidden=False, ts=None):
	return BookEvent(
		ts=entry_ts if ts is None else ts,
		venue_id=venue,
		instrument_id="XYZ",
		action=action,
		reason=reason,
		order_id=order_id,
		participant_id=participant,
		side=side,
		order_kind=kind,
		price=price,
		ref_price=ref_price,
		display_class=DisplayClass.HIDDEN if kind is OrderKind.HIDDEN else DisplayClass.LIT,
		entry_ts=entry_ts,
		entry_seq=entry_seq,
		open_qty=100,
		displayed_qty=0 if hidden else 100,
		hidden_liquidity=hidden,
	)


def trade(maker, taker, ts, price=101, qty=100, trade_id=1, buyer="T", seller="M", venue="E1"):
	return Trade(taker, maker, price, qty, ts, Side.BUY, trade_id, venue, "XYZ", buyer, seller)


def gateway(ts, participant, order_id, anonymous=False):
	return GatewayRecord(ts, "E1", participant, "new", order_id, anonymous=anonymous)


def hide_and_light(trace):
	trace.append("book", event("rest", "insert", 1, "VICTIM", 100, 1))
	trace.append("book", event("rest", "insert", 2, "ATTACKER", 200, 2, kind=OrderKind.HIDE_AND_LIGHT, price=100))
	# relighting moves the live key but not the reference one
	trace.append("book", event("rerank", "relight", 2, "ATTACKER", 50, 0, kind=OrderKind.HIDE_AND_LIGHT, ts=300))
	trace.append("trade", trade(2, 9, 400))


@pytest.fixture
def trace():
	t = Trace("test")
	yield t
	t.close()


class TestTrace:

	def test_collects_own_run_only(self, trace):
		other = Trace("other")
		publish("test", "order", gateway(5, "A", 1))
		publish("other", "order", gateway(6, "B", 2))
		assert [r.participant_id for r in trace.data("order")] == ["A"]
		assert [r.participant_id for r in other.data("order")] == ["B"]
		other.close()

	def test_event_ids_follow_publication(self, trace):
		publish("test", "order", gateway(9, "A", 1))
		publish("test", "observation", StalenessSample(3, "A", 10))
		assert [(r.event_id, r.topic, r.ts) for r in trace.records] == [(0, "order", 9), (1, "observation", 3)]

	def test_closed_trace_stops_listening(self, trace):
		trace.close()
		publish("test", "order", gateway(1, "A", 1))
		assert len(trace) == 0


class TestQueueIntegrity:

	def test_fifo_book_has_no_violations(self, trace, fifo_book, make_order):
		for i, who in enumerate(("A", "B", "C")):
			insert_order(fifo_book, make_order("sell", 101, 100, participant=who), 10 + i)
		insert_order(fifo_book, make_order("buy", 101, 250, participant="T"), 20)
		journal_into(trace, fifo_book)
		assert len(trace.data("trade")) == 3
		assert audit_queue_integrity(trace) == []

	def test_relit_order_jumping_the_queue(self, trace):
		hide_and_light(trace)
		violations = audit_queue_integrity(trace)
		assert len(violations) == 1
		v = violations[0]
		assert v.property is Property.QUEUE_INTEGRITY
		assert v.subjects == ("ATTACKER", "VICTIM")
		assert v.evidence["jumped_orders"] == [1]
		assert v.evidence["maker_kind"] == "hide_and_light"
		assert v.event_ids == (3, 1, 0)

	def test_whitelisted_kind(self, trace):
		hide_and_light(trace)
		assert audit_queue_integrity(trace, whitelist=("hide_and_light",)) == []
		assert audit_queue_integrity(trace, whitelist=(OrderKind.HIDE_AND_LIGHT,)) == []

	def test_skipped_venue(self, trace):
		hide_and_light(trace)
		assert audit_queue_integrity(trace, skip_venues=("E1",)) == []

	def test_modify_moves_reference_key(self, trace):
		trace.append("book", event("rest", "insert", 1, "A", 100, 1))
		trace.append("book", event("rest", "insert", 2, "B", 200, 2))
		trace.append("book", event("rerank", "modify", 1, "A", 300, 3))
		trace.append("trade", trade(2, 9, 400))
		assert audit_queue_integrity(trace) == []

	def test_removed_order_is_not_jumped(self, trace):
		trace.append("book", event("rest", "insert", 1, "A", 100, 1))
		trace.append("book", event("rest", "insert", 2, "B", 200, 2))
		trace.append("book", event("remove", "cancel", 1, "A", 100, 1, ts=250))
		trace.append("trade", trade(2, 9, 400))
		assert audit_queue_integrity(trace) == []

	@pytest.mark.parametrize("kwargs", [
		{"ref_price": 102, "price": 102},
		{"kind": OrderKind.HIDDEN},
		{"side": Side.BUY},
		{"venue": "E2"},
	])
	def test_different_queue(self, trace, kwargs):
		trace.append("book", event("rest", "insert", 1, "A", 100, 1, **dict(kwargs)))
		trace.append("book", event("rest", "insert", 2, "B", 200, 2))
		trace.append("trade", trade(2, 9, 400))
		assert audit_queue_integrity(trace) == []


class TestTradingIntegrity:

	def churn(self, trace, participant, submits, trades, start=0):
		for i in range(submits):
			trace.append("order", gateway(start + i, participant, start + i + 1))
		for i in range(trades):
			trace.append("trade", trade(i + 1, 9000 + i, start + 500000 + i, trade_id=i + 1, buyer="OTHER", seller=participant))

	def test_ratio(self, trace):
		self.churn(trace, "STUFFER", 1000, 5)
		assert order_to_trade_ratios(trace)["STUFFER"] == 200.0

	def test_cancels_do_not_count_as_submits(self, trace):
		self.churn(trace, "STUFFER", 1000, 5)
		for i in range(990):
			trace.append("order", GatewayRecord(600000 + i, "E1", "STUFFER", "cancel", i + 1))
		assert order_to_trade_ratios(trace)["STUFFER"] == 200.0

	def test_flagged_above_threshold(self, trace):
		self.churn(trace, "STUFFER", 1000, 5)
		violations = flag_trading_integrity(trace, threshold=50)
		assert [v.subjects for v in violations] == [("STUFFER",)]
		evidence = violations[0].evidence
		assert (evidence["submits"], evidence["trades"], evidence["ratio"]) == (1000, 5, 200.0)
		assert violations[0].property is Property.TRADING_INTEGRITY

	def test_ten_to_one_passes(self, trace):
		self.churn(trace, "MM", 100, 10)
		assert order_to_trade_ratios(trace)["MM"] == 10.0
		assert flag_trading_integrity(trace, threshold=50) == []

	def test_no_trades_counts_as_one(self, trace):
		self.churn(trace, "A", 60, 0)
		assert order_to_trade_ratios(trace) == {"A": 60.0}
		assert len(flag_trading_integrity(trace, threshold=50)) == 1

	def test_windows(self, trace):
		self.churn(trace, "A", 60, 0)
		self.churn(trace, "A", 60, 0, start=2000000)
		violations = flag_trading_integrity(trace, threshold=50, window_us=1000000)
		assert [v.ts for v in violations] == [0, 2000000]

	def test_empty(self, trace):
		assert order_to_trade_ratios(trace) == {}
		assert flag_trading_integrity(trace) == []


class TestAnonymity:

	def populate(self, trace):
		for order_id, who in enumerate(("A", "A", "B", "B"), start=1):
			trace.append("order", gateway(order_id, who, order_id, anonymous=True))
		trace.append("order", gateway(10, "C", 10))
		for order_id, guess in ((1, "A"), (2, "B"), (3, "B"), (4, None), (10, "C")):
			trace.append("observation", FingerprintGuess(100 + order_id, "SPY", "E1", order_id, 500, guess))

	def test_scores(self, trace):
		self.populate(trace)
		report = measure_anonymity(trace)
		assert report.anonymous_orders == 4
		assert report.guesses == 3
		assert report.correct == 2
		assert report.accuracy == 0.5
		assert report.precision == pytest.approx(2 / 3)
		assert report.abstention == 0.25
		assert report.chance == 0.5
		assert report.standard_error == pytest.approx(0.25)

	def test_latest_guess_wins(self, trace):
		self.populate(trace)
		trace.append("observation", FingerprintGuess(200, "SPY", "E1", 2, 500, "A"))
		assert measure_anonymity(trace).correct == 3

	def test_population(self, trace):
		self.populate(trace)
		report = measure_anonymity(trace, participants={"A"})
		assert report.anonymous_orders == 2
		assert report.chance == 1.0

	def test_nothing_anonymous(self, trace):
		report = measure_anonymity(trace)
		assert (report.accuracy, report.precision, report.abstention) == (0.0, 0.0, 0.0)

	def test_flag_when_well_above_chance(self, trace):
		for order_id in range(1, 21):
			who = "A" if order_id % 2 else "B"
			trace.append("order", gateway(order_id, who, order_id, anonymous=True))
			trace.append("observation", FingerprintGuess(100 + order_id, "SPY", "E1", order_id, 500, who))
		violations = flag_anonymity(measure_anonymity(trace))
		assert len(violations) == 1
		v = violations[0]
		assert (v.property, v.ts, v.subjects) == (Property.PARTICIPANT_ANONYMITY, 120, ("SPY",))
		assert v.evidence["accuracy"] == 1.0
		assert len(v.event_ids) == 20

	def test_no_flag_near_chance(self, trace):
		self.populate(trace)
		assert flag_anonymity(measure_anonymity(trace)) == []


class TestConfidentiality:

	def hidden_order(self, trace):
		trace.append("book", event("rest", "insert", 1, "INVESTOR", 100, 1, kind=OrderKind.HIDDEN, price=100, ref_price=100, side=Side.BUY, hidden=True))

	def belief(self, ts, price=100, side="buy"):
		return HiddenLiquidityBelief(ts, "PINGER", "E1", "XYZ", side, price, 100, 0)

	def reveal(self, trace, ts):
		trace.append("trade", Trade(2, 1, 100, 100, ts - 10, Side.SELL, 7, "E1", "XYZ", "INVESTOR", "PINGER"))
		trace.append("feed", FeedRecord(ts, "E1", "XYZ", "prints", 3, (7,)))

	def test_detected_before_print(self, trace):
		self.hidden_order(trace)
		trace.append("observation", self.belief(200))
		self.reveal(trace, 500)
		report = measure_confidentiality(trace)
		assert (report.hidden_orders, report.detected) == (1, 1)
		assert report.detection_rate == 1.0
		assert report.lead_times_us == [300]
		assert report.mean_lead_us == 300.0

	def test_no_pinger(self, trace):
		self.hidden_order(trace)
		self.reveal(trace, 500)
		report = measure_confidentiality(trace)
		assert report.detection_rate == 0.0
		assert report.mean_lead_us is None

	def test_belief_after_print(self, trace):
		self.hidden_order(trace)
		self.reveal(trace, 500)
		trace.append("observation", self.belief(600))
		assert measure_confidentiality(trace).detected == 0

	@pytest.mark.parametrize("price, side", [(99, "buy"), (100, "sell")])
	def test_wrong_guess(self, trace, price, side):
		self.hidden_order(trace)
		trace.append("observation", self.belief(200, price, side))
		assert measure_confidentiality(trace).detected == 0

	def test_never_revealed(self, trace):
		self.hidden_order(trace)
		trace.append("observation", self.belief(200))
		report = measure_confidentiality(trace)
		assert report.detected == 1
		assert report.lead_times_us == []

	def test_detection_is_a_violation(self, trace):
		self.hidden_order(trace)
		trace.append("observation", self.belief(200))
		self.reveal(trace, 500)
		violations = flag_confidentiality(measure_confidentiality(trace))
		assert [(v.property, v.ts, v.subjects, v.event_ids) for v in violations] == [
			(Property.DATA_CONFIDENTIALITY, 200, ("PINGER", "INVESTOR"), (0, 1)),
		]
		assert violations[0].evidence["lead_us"] == 300

	def test_supplied_beliefs_cite_the_order_only(self, trace):
		self.hidden_order(trace)
		violations = flag_confidentiality(measure_confidentiality(trace, [self.belief(200)]))
		assert [v.event_ids for v in violations] == [(0,)]

	def test_undetected_is_quiet(self, trace):
		self.hidden_order(trace)
		self.reveal(trace, 500)
		assert flag_confidentiality(measure_confidentiality(trace)) == []


class TestFrames:

	def populate(self, trace):
		trace.append("trade", Trade(2, 1, 100, 100, 10, Side.BUY, 1, "E1", "XYZ", "A", "B"))
		trace.append("trade", Trade(3, 1, 101, 50, 20, Side.BUY, 2, "E1", "XYZ", "C", "B"))
		for order_id, who, side, qty, price in ((2, "A", Side.BUY, 100, 100), (1, "B", Side.SELL, 100, 100), (3, "C", Side.BUY, 50, 101), (1, "B", Side.SELL, 50, 101)):
			trace.append("report", ExecutionReport(order_id, who, "E1", ExecStatus.FILL, 20, qty, price, instrument_id="XYZ", side=side))

	def test_trades_frame(self, trace):
		self.populate(trace)
		frame = trades_frame(trace)
		assert list(frame["price_ticks"]) == [100, 101]
		assert list(frame["aggressor_side"]) == ["buy", "buy"]
		assert list(frame["buyer"]) == ["A", "C"]

	def test_positions(self, trace):
		self.populate(trace)
		assert positions(trades_frame(trace)) == {("A", "XYZ"): 100, ("B", "XYZ"): -150, ("C", "XYZ"): 50}

	def test_pnl_is_zero_sum(self, trace):
		self.populate(trace)
		pnl = pnl_by_participant(trades_frame(trace), {"XYZ": 102})
		assert pnl == {"A": 200, "B": -250, "C": 50}
		assert sum(pnl.values()) == 0

	def test_conservation(self, trace):
		self.populate(trace)
		assert conservation(trace, trades_frame(trace)) == {"XYZ": {"bought": 150, "sold": 150, "net_position": 0, "balanced": True}}

	def test_empty(self, trace):
		frame = trades_frame(trace)
		assert frame.empty
		assert positions(frame) == {}
		assert pnl_by_participant(frame, {}) == {}


class TestInfoSymmetry:

	def test_percentiles(self, trace):
		for ts, staleness in enumerate((10, 20, 30)):
			trace.append("observation", StalenessSample(ts, "VICTIM", staleness))
		stats = measure_info_symmetry(trace)["VICTIM"]
		assert stats["p50"] == 20.0
		assert stats["max"] == 30
		assert stats["mean"] == 20.0

	def test_no_samples(self, trace):
		assert measure_info_symmetry(trace) == {}

	def test_flag_over_threshold(self, trace):
		for ts, staleness in ((10, 500), (20, 20000), (30, 60000), (40, 30000)):
			trace.append("observation", StalenessSample(ts, "VICTIM", staleness))
		trace.append("observation", StalenessSample(50, "FAST", 100))
		violations = flag_info_symmetry(trace, threshold_us=10000)
		assert len(violations) == 1
		v = violations[0]
		assert (v.property, v.ts, v.subjects, v.event_ids) == (Property.SYMMETRIC_INFORMATION, 20, ("VICTIM",), (1, 2))
		assert (v.evidence["samples_over"], v.evidence["max_staleness_us"]) == (3, 60000)

	def test_flag_without_samples(self, trace):
		assert flag_info_symmetry(trace) == []


class TestFairAccess:

	def test_snipes_and_scalps_are_flagged(self, trace):
		trace.append("observation", SignalJump(100, "XYZ", 100, 103))
		trace.append("observation", SnipeCapture(150, "SNIPER", "E1", "XYZ", "buy", 101, 100, 103, 100))
		trace.append("observation", ScalpRecord(300, "SCALPER", "E2", "XYZ", 40000, 1000, 1001))
		violations = flag_fair_access(trace)
		assert [(v.property, v.subjects, v.event_ids) for v in violations] == [
			(Property.FAIR_MARKET_ACCESS, ("SNIPER",), (0, 1)),
			(Property.FAIR_MARKET_ACCESS, ("SCALPER",), (2,)),
		]
		assert [v.evidence["technique"] for v in violations] == ["snipe", "scalp"]

	def test_quiet_without_attacks(self, trace):
		trace.append("observation", SignalJump(100, "XYZ", 100, 103))
		assert flag_fair_access(trace) == []


class TestMetrics:

	def test_build(self, trace):
		hide_and_light(trace)
		report, violations = build_metrics(trace, {"XYZ": 101}, MonitorSettings(), trace_hash="abc")
		assert report.trades == 1
		assert report.pnl_total == 0
		assert report.rank_inversions == 1
		assert [v.property for v in violations] == [Property.QUEUE_INTEGRITY]
		assert report.to_dict()["trace_hash"] == "abc"

	def test_whitelist_setting(self, trace):
		hide_and_light(trace)
		report, violations = build_metrics(trace, {}, MonitorSettings(queue_whitelist=("hide_and_light",)))
		assert violations == []
		assert report.rank_inversions == 0

	def test_violation_to_dict(self):
		v = Violation(Property.QUEUE_INTEGRITY, 400, ("A", "B"), {"price": 101}, (3, 1))
		assert v.to_dict() == {"property": "QueueIntegrity", "ts": 400, "subjects": ["A", "B"], "evidence": {"price": 101}, "event_ids": [3, 1]}
