# -*- coding: utf-8 -*-
"""The run and compare commands.

Both return a process exit code: 0 on success, 2 when the scenario does not
parse or validate.
"""
import logging
import os
import sys
from collections import Counter

import config
import logger
import paths

from .errors import ScenarioError
from .reports import write_json, write_reports
from .runner import run_scenario
from .scenario import load_scenario, split_override

log = logging.getLogger("cli.commands")

EXIT_OK = 0
EXIT_CONFIG = 2

COMPARE_FILE = "compare.json"

# metrics compared side by side
ATTACK_METRICS = (
	"trades",
	"pnl_total",
	"snipe_jumps",
	"snipe_captures",
	"snipe_capture_rate",
	"scalp_markup_total",
	"ping_detections",
	"detection_rate",
	"mean_lead_time_us",
	"fingerprint_accuracy",
	"fingerprint_precision",
	"fingerprint_chance",
	"rank_inversions",
)


def resolve_scenario(name):
	"""A path as given, else a file in the configured scenario dir, else a bundled scenario."""
	if os.path.exists(name):
		return name
	scenario_dir = config.get("general", "scenario_dir")
	if scenario_dir:
		candidate = os.path.join(scenario_dir, name if name.endswith(".json") else name + ".json")
		if os.path.exists(candidate):
			return candidate
	return paths.scenario_file(name)


def _report_error(e):
	log.error(F"scenario error: {e}")
	print(F"error: {e}", file=sys.stderr)


def _execute(scenario, seed, out_dir):
	os.makedirs(out_dir, exist_ok=True)
	handler = None
	if logger.events_enabled(config.get("general", "events_log")):
		handler = logger.open_events_log(out_dir)
	try:
		result = run_scenario(scenario, seed)
	finally:
		if handler is not None:
			logger.close_events_log(handler)
	write_reports(result, out_dir)
	return result


def run(scenario_path, out_dir, seed=None, overrides=()):
	try:
		scenario = load_scenario(resolve_scenario(scenario_path), overrides)
		if seed is not None and int(seed) < 0:
			raise ScenarioError("must be a non-negative integer", "seed")
	except ScenarioError as e:
		_report_error(e)
		return EXIT_CONFIG
	result = _execute(scenario, seed, out_dir)
	print(F"{scenario.name} seed {result.seed}: {result.metrics.trades} trades, {len(result.violations)} violations, trace {result.trace_hash[:12]}")
	return EXIT_OK


def summarize(result):
	metrics = result.metrics.to_dict()
	res = {name: metrics[name] for name in ATTACK_METRICS}
	res["otr_flagged"] = len(metrics["otr_flagged"])
	res["violations"] = len(result.violations)
	res["violations_by_property"] = dict(sorted(Counter(v.property.value for v in result.violations).items()))
	return res


def delta(baseline, toggled):
	res = {}
	for name, before in baseline.items():
		after = toggled[name]
		if isinstance(before, dict):
			res[name] = {k: after.get(k, 0) - before.get(k, 0) for k in sorted(set(before) | set(after))}
		elif before is None or after is None:
			res[name] = None
		else:
			res[name] = after - before
	return res


def compare(scenario_path, out_dir, toggles, seed=None, overrides=()):
	"""Run the scenario twice with the same seed, the second time with toggles applied.

	The two legs run one after the other; events.log, when enabled, is
	written per leg.
	"""
	try:
		path = resolve_scenario(scenario_path)
		if not toggles:
			raise ScenarioError("at least one toggle is required")
		for toggle in toggles:
			split_override(toggle)
		baseline = load_scenario(path, overrides)
		toggled = load_scenario(path, list(overrides) + list(toggles))
	except ScenarioError as e:
		_report_error(e)
		return EXIT_CONFIG
	seed = baseline.seed if seed is None else int(seed)
	legs = {}
	for name, scenario in (("baseline", baseline), ("toggled", toggled)):
		legs[name] = summarize(_execute(scenario, seed, os.path.join(out_dir, name)))
	doc = {
		"scenario": baseline.name,
		"seed": seed,
		"toggles": list(toggles),
		"baseline": legs["baseline"],
		"toggled": legs["toggled"],
		"delta": delta(legs["baseline"], legs["toggled"]),
	}
	write_json(os.path.join(out_dir, COMPARE_FILE), doc)
	print(F"{baseline.name} seed {seed}: captures {legs['baseline']['snipe_captures']} -> {legs['toggled']['snipe_captures']}, violations {legs['baseline']['violations']} -> {legs['toggled']['violations']}")
	return EXIT_OK
