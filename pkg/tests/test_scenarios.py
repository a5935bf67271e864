# -*- coding: utf-8 -*-
"""The bundled scenarios, run end to end in-process."""
import math
import os

import pandas as pd
import pytest

import paths
from cli import load_scenario, run_scenario
from monitors import trades_frame
from monitors.records import StalenessSample
from monitors.violations import Property

pytestmark = pytest.mark.slow

BUNDLED = sorted(name[:-5] for name in os.listdir(paths.scenarios_path()) if name.endswith(".json"))


def run(name, *overrides):
	return run_scenario(load_scenario(paths.scenario_file(name), overrides))


def violations_of(result, prop):
	return [v for v in result.violations if v.property is prop]


def queue_violations(result):
	return violations_of(result, Property.QUEUE_INTEGRITY)


@pytest.mark.parametrize("name", BUNDLED)
def test_global_invariants(name):
	first = run(name)
	for instrument, entry in first.metrics.conservation.items():
		assert entry["balanced"], instrument
	assert first.metrics.pnl_total == 0
	assert run(name).trace_hash == first.trace_hash


def test_honest_baseline_is_quiet():
	result = run("honest_baseline")
	assert result.metrics.trades > 0
	assert result.violations == []


class TestSnipe:

	def test_captures_stale_quotes(self):
		result = run("snipe_baseline")
		assert result.metrics.snipe_jumps >= 20
		assert result.metrics.snipe_captures > 0
		assert result.metrics.pnl["SNIPER"] > 0
		assert len(violations_of(result, Property.FAIR_MARKET_ACCESS)) == result.metrics.snipe_captures

	def test_batch_auctions_remove_the_race(self):
		assert run("snipe_baseline", "venues[0].batch_interval_us=100000").metrics.snipe_captures == 0

	def test_speed_bump_remove_the_race(self):
		assert run("snipe_baseline", "venues[0].speed_bump_in_us=1000").metrics.snipe_captures == 0


class TestScalp:

	def broker_buys(self, result, venue):
		trades = trades_frame(result.trace)
		return trades[(trades["buyer"] == "BROKER") & (trades["venue"] == venue)]

	def test_broker_pays_the_markup(self):
		result = run("scalp")
		e1 = self.broker_buys(result, "E1")
		e2 = self.broker_buys(result, "E2")
		assert e1["qty"].sum() == 60000
		assert set(e1["price_ticks"]) == {1000}
		assert e2["qty"].sum() == 40000
		assert set(e2["price_ticks"]) == {1001}
		assert result.metrics.scalp_markups == [1]

	def test_inbound_bump_protects_the_broker(self):
		result = run("scalp", "venues[1].speed_bump_in_us=350")
		buys = pd.concat([self.broker_buys(result, "E1"), self.broker_buys(result, "E2")])
		assert buys["qty"].sum() == 100000
		assert set(buys["price_ticks"]) == {1000}
		assert result.metrics.scalp_markups == []


class TestQueueJump:

	def test_hide_and_light(self):
		violations = queue_violations(run("queue_jump_hl"))
		assert len(violations) == 1
		assert violations[0].subjects == ("ATTACKER", "VICTIM")
		assert violations[0].evidence["maker_kind"] == "hide_and_light"

	def test_plain_limit_control(self):
		assert queue_violations(run("queue_jump_hl_control")) == []

	def test_day_iso(self):
		violations = queue_violations(run("queue_jump_iso"))
		assert len(violations) == 1
		assert violations[0].subjects == ("ATTACKER", "VICTIM")

	def test_documented_exception(self):
		result = run("queue_jump_iso", ("monitors", {"queue_whitelist": ["day_iso"]}))
		assert queue_violations(result) == []


class TestFingerprint:

	def test_exact_latencies_identify_brokers(self):
		metrics = run("fingerprint").metrics
		assert metrics.anonymous_orders >= 100
		assert metrics.fingerprint_accuracy == 1.0

	def test_exact_latencies_break_anonymity(self):
		violations = violations_of(run("fingerprint"), Property.PARTICIPANT_ANONYMITY)
		assert len(violations) == 1
		assert violations[0].evidence["accuracy"] == 1.0

	def test_timestamp_noise_falls_to_chance(self):
		metrics = run("fingerprint", "links[0].timestamp_noise_us=500", "links[1].timestamp_noise_us=500").metrics
		assert metrics.fingerprint_guesses > 0
		tolerance = 3 * math.sqrt(0.25 / metrics.fingerprint_guesses)
		assert abs(metrics.fingerprint_precision - 0.5) <= tolerance
		assert metrics.fingerprint_accuracy < 1.0


class TestQuoteStuff:

	def test_victim_falls_behind(self):
		result = run("quote_stuff")
		samples = [s for s in result.trace.data("observation", StalenessSample) if s.participant_id == "VICTIM" and 10000 <= s.ts <= 110000]
		staleness = [s.staleness_us for s in samples]
		assert len(staleness) > 100
		assert all(b > a for a, b in zip(staleness, staleness[1:]))
		assert staleness[-1] == pytest.approx(60000, rel=0.1)
		assert result.metrics.staleness["VICTIM"]["max"] >= 50000
		assert "STUFFER" in result.metrics.otr_flagged
		assert ("VICTIM",) in [v.subjects for v in violations_of(result, Property.SYMMETRIC_INFORMATION)]


class TestPing:

	def test_reserve_found_before_the_tape(self):
		result = run("ping")
		assert result.metrics.detection_rate > 0
		assert result.metrics.mean_lead_time_us > 0
		assert len(violations_of(result, Property.DATA_CONFIDENTIALITY)) == result.metrics.ping_detections

	def test_held_reports(self):
		assert run("ping_control").metrics.detection_rate == 0

	def test_probing_disabled(self):
		assert run("ping", "agents[1].params.enabled=false").metrics.detection_rate == 0
