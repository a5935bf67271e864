# -*- coding: utf-8 -*-
"""Run outputs: trades.csv, metrics.json, violations.json and the resolved scenario."""
import json
import logging
import os

from monitors import TRADE_COLUMNS, trades_frame

log = logging.getLogger("cli.reports")

TRADES_FILE = "trades.csv"
METRICS_FILE = "metrics.json"
VIOLATIONS_FILE = "violations.json"
SCENARIO_FILE = "scenario.json"


def _plain(value):
	# numpy scalars
	if hasattr(value, "item"):
		return value.item()
	return str(value)


def write_json(path, data):
	with open(path, "w", encoding="utf-8", newline="\n") as f:
		json.dump(data, f, indent=2, sort_keys=True, default=_plain)
		f.write("\n")


def write_trades(path, trace):
	frame = trades_frame(trace)
	frame.to_csv(path, columns=TRADE_COLUMNS, index=False, lineterminator="\n")
	return len(frame)


def violations_document(result):
	return {
		"count": len(result.violations),
		"violations": [v.to_dict() for v in result.violations],
	}


def metrics_document(result):
	doc = result.metrics.to_dict()
	doc["scenario"] = result.scenario.name
	doc["seed"] = result.seed
	doc["violations"] = len(result.violations)
	return doc


def write_reports(result, out_dir):
	"""Write every output of one run into out_dir; returns the paths written."""
	os.makedirs(out_dir, exist_ok=True)
	paths = {name: os.path.join(out_dir, name) for name in (TRADES_FILE, METRICS_FILE, VIOLATIONS_FILE, SCENARIO_FILE)}
	trades = write_trades(paths[TRADES_FILE], result.trace)
	write_json(paths[METRICS_FILE], metrics_document(result))
	write_json(paths[VIOLATIONS_FILE], violations_document(result))
	scenario = result.scenario.to_dict()
	scenario["seed"] = result.seed
	write_json(paths[SCENARIO_FILE], scenario)
	log.info(F"wrote {trades} trades and {len(result.violations)} violations to {out_dir}")
	return paths
