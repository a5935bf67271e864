# -*- coding: utf-8 -*-
import copy
import json
import os

import pytest

import marketsim
from cli import ScenarioConfig, ScenarioError, apply_override, commands, load_scenario, parse_scenario, parse_value, split_override
from cli.scenario import parse_path
from engine import MatchingAlgo

MINIMAL = {
	"duration_us": 10000,
	"seed": 4,
	"instruments": ["XYZ"],
	"venues": [{"venue_id": "E1"}, {"venue_id": "E2", "matching_algo": "pro_rata"}],
	"agents": [
		{"id": "MM", "type": "market_maker", "params": {"venue_id": "E1", "instrument_id": "XYZ", "initial_value": 100}},
		{"id": "T", "type": "scripted", "capabilities": {"link_profile": "colocated", "feed": "l1"}, "params": {"actions": [
			{"at": 1000, "venue": "E1", "instrument": "XYZ", "side": "buy", "price": 101, "qty": 100},
		]}},
	],
	"links": [{"src": "T", "dst": "E1", "base_latency_us": 50}],
}


def scenario_with(**changes):
	data = copy.deepcopy(MINIMAL)
	data.update(changes)
	return data


def error_for(data):
	with pytest.raises(ScenarioError) as info:
		ScenarioConfig.from_dict(data)
	return info.value


@pytest.fixture
def scenario_file(tmp_path):
	def write(data, name="mini.json"):
		path = tmp_path / name
		path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
		return str(path)
	return write


@pytest.fixture(autouse=True)
def no_events_log(monkeypatch):
	monkeypatch.setenv("MARKETSIM_LOG", "off")


class TestScenarioConfig:

	def test_builds(self):
		s = ScenarioConfig.from_dict(MINIMAL)
		assert s.venue_ids == ["E1", "E2"]
		assert s.venues[1].matching_algo is MatchingAlgo.PRO_RATA
		assert s.agents[1].capabilities.default_latency_us == 20
		assert s.sip.enabled
		assert "SIP" in s.endpoint_ids

	def test_round_trip(self):
		s = ScenarioConfig.from_dict(MINIMAL)
		assert ScenarioConfig.from_dict(json.loads(s.to_json())) == s

	def test_setting_falls_back_to_default(self):
		s = ScenarioConfig.from_dict(scenario_with(l2_depth=3))
		assert s.setting("l2_depth") == 3
		assert s.setting("default_latency_us") == 100

	@pytest.mark.parametrize("data, path", [
		({"links": [{"src": "T", "dst": "E9", "base_latency_us": 50}]}, "links[0].dst"),
		({"links": [{"src": "T", "dst": "E1", "base_latency_us": -1}]}, "links[0].base_latency_us"),
		({"venues": [{"venue_id": "E1"}, {"venue_id": "E1"}]}, "venues[1].venue_id"),
		({"venues": [{"venue_id": "E1", "speed_bump_in_us": -5}]}, "venues[0].speed_bump_in_us"),
		({"venues": [{"venue_id": "E1", "colour": "red"}]}, "venues[0].colour"),
		({"duration_us": 0}, "duration_us"),
		({"seed": -1}, "seed"),
		({"instruments": []}, "instruments"),
		({"signal": {"instrument_id": "ABC", "initial_value": 100}}, "signal.instrument_id"),
		({"values": {"ABC": 1}}, "values.ABC"),
		({"monitors": {"queue_whitelist": ["limit"]}}, "monitors.queue_whitelist[0]"),
		({"monitors": {"staleness_threshold_us": -1}}, "monitors.staleness_threshold_us"),
	])
	def test_invalid_field_named_by_path(self, data, path):
		assert error_for(scenario_with(**data)).path == path

	def test_missing_required(self):
		data = copy.deepcopy(MINIMAL)
		del data["duration_us"]
		assert error_for(data).path == "duration_us"

	@pytest.mark.parametrize("agent, path", [
		({"id": "X", "type": "wizard"}, "agents[2].type"),
		({"id": "X", "type": "pinger", "params": {"speed": 3}}, "agents[2].params.speed"),
		({"id": "X", "type": "pinger", "params": {"venue_id": "E7"}}, "agents[2].params.venue_id"),
		({"id": "X", "type": "pinger", "capabilities": {"feed": "tape"}}, "agents[2].capabilities.feed"),
		({"id": "E1", "type": "pinger"}, "agents[2].id"),
		({"id": "MM", "type": "pinger"}, "agents[2].id"),
		({"id": "X", "type": "queue_jumper", "params": {"mode": "hide_and_light"}}, "agents[2].params.mode"),
		({"id": "X", "type": "scripted", "params": {"actions": [{"at": 0, "venue": "E3"}]}}, "agents[2].params.actions[0].venue"),
		({"id": "X", "type": "scalper", "params": {"trigger": "tape", "ping_price": 100}}, "agents[2].params.trigger"),
		({"id": "X", "type": "scalper"}, "agents[2].params.ping_price"),
	])
	def test_invalid_agent(self, agent, path):
		data = copy.deepcopy(MINIMAL)
		data["agents"].append(agent)
		assert error_for(data).path == path

	def test_not_an_object(self):
		assert error_for([1, 2]).path is None


class TestOverrides:

	def test_parse_path(self):
		assert parse_path("venues[0].speed_bump_in_us") == ["venues", 0, "speed_bump_in_us"]
		assert parse_path("agents[1].params.enabled") == ["agents", 1, "params", "enabled"]

	@pytest.mark.parametrize("path", ["venues..x", "venues[a]", "0venues", "venues[0"])
	def test_bad_path(self, path):
		with pytest.raises(ScenarioError):
			parse_path(path)

	@pytest.mark.parametrize("text, value", [("1000", 1000), ("false", False), ("[1, 2]", [1, 2]), ("E2", "E2"), ('"7"', "7")])
	def test_parse_value(self, text, value):
		assert parse_value(text) == value

	def test_split(self):
		assert split_override("venues[0].speed_bump_in_us=350") == ("venues[0].speed_bump_in_us", 350)
		assert split_override("description = a=b") == ("description", "a=b")
		with pytest.raises(ScenarioError):
			split_override("venues[0].speed_bump_in_us")

	def test_apply(self):
		data = copy.deepcopy(MINIMAL)
		apply_override(data, "venues[0].speed_bump_in_us", 1000)
		apply_override(data, "agents[0].params.half_spread", 2)
		assert data["venues"][0]["speed_bump_in_us"] == 1000
		assert data["agents"][0]["params"]["half_spread"] == 2

	@pytest.mark.parametrize("path", ["venues[5].speed_bump_in_us", "sip.latency_us", "duration_us.x"])
	def test_apply_rejects_missing_parents(self, path):
		with pytest.raises(ScenarioError) as info:
			apply_override(copy.deepcopy(MINIMAL), path, 1)
		assert info.value.path == path

	def test_override_is_validated(self):
		with pytest.raises(ScenarioError) as info:
			parse_scenario(json.dumps(MINIMAL), ["venues[0].batch_interval_us=-1"])
		assert info.value.path == "venues[0].batch_interval_us"


class TestLoading:

	def test_name_from_file(self, scenario_file):
		assert load_scenario(scenario_file(MINIMAL, "tiny.json")).name == "tiny"

	def test_syntax_error_has_position(self, scenario_file):
		with pytest.raises(ScenarioError) as info:
			load_scenario(scenario_file('{\n  "duration_us": 10,\n  "seed": ,\n}'))
		assert (info.value.line, info.value.column) == (3, 11)
		assert str(info.value).startswith("line 3 column 11")

	def test_missing_file(self, tmp_path):
		with pytest.raises(ScenarioError):
			load_scenario(str(tmp_path / "nope.json"))

	def test_bundled_scenarios_validate(self):
		bundled = sorted(os.listdir(os.path.join(os.path.dirname(os.path.dirname(__file__)), "scenarios")))
		assert len(bundled) >= 8
		for name in bundled:
			assert load_scenario(commands.resolve_scenario(name)).name == name[:-5]


class TestCommands:

	def test_run_writes_reports(self, scenario_file, tmp_path):
		out = tmp_path / "out"
		assert commands.run(scenario_file(MINIMAL), str(out)) == commands.EXIT_OK
		assert sorted(os.listdir(out)) == ["metrics.json", "scenario.json", "trades.csv", "violations.json"]
		metrics = json.loads((out / "metrics.json").read_text(encoding="utf-8"))
		assert metrics["seed"] == 4
		assert metrics["pnl_total"] == 0
		header = (out / "trades.csv").read_text(encoding="utf-8").splitlines()[0]
		assert header == "ts_us,venue,instrument,price_ticks,qty,taker_order,maker_order,aggressor_side"

	def test_seed_argument_wins(self, scenario_file, tmp_path):
		commands.run(scenario_file(MINIMAL), str(tmp_path), seed=9)
		assert json.loads((tmp_path / "scenario.json").read_text(encoding="utf-8"))["seed"] == 9

	def test_invalid_scenario_exits_2(self, scenario_file, tmp_path, capsys):
		path = scenario_file(scenario_with(links=[{"src": "T", "dst": "E9", "base_latency_us": 1}]))
		assert commands.run(path, str(tmp_path / "out")) == commands.EXIT_CONFIG
		assert "links[0].dst" in capsys.readouterr().err
		assert not (tmp_path / "out").exists()

	def test_negative_seed_exits_2(self, scenario_file, tmp_path):
		assert commands.run(scenario_file(MINIMAL), str(tmp_path), seed=-1) == commands.EXIT_CONFIG

	def test_bad_override_exits_2(self, scenario_file, tmp_path):
		assert commands.run(scenario_file(MINIMAL), str(tmp_path), overrides=["venues[3].dark=true"]) == commands.EXIT_CONFIG

	def test_compare(self, scenario_file, tmp_path):
		code = commands.compare(scenario_file(MINIMAL), str(tmp_path), ["venues[0].speed_bump_in_us=350"])
		assert code == commands.EXIT_OK
		doc = json.loads((tmp_path / "compare.json").read_text(encoding="utf-8"))
		assert doc["toggles"] == ["venues[0].speed_bump_in_us=350"]
		assert doc["seed"] == 4
		assert set(doc["delta"]) == set(doc["baseline"])
		for leg in ("baseline", "toggled"):
			assert os.path.exists(tmp_path / leg / "metrics.json")

	def test_compare_needs_a_toggle(self, scenario_file, tmp_path):
		assert commands.compare(scenario_file(MINIMAL), str(tmp_path), []) == commands.EXIT_CONFIG

	def test_delta(self):
		before = {"trades": 3, "mean_lead_time_us": None, "violations_by_property": {"QueueIntegrity": 1}}
		after = {"trades": 1, "mean_lead_time_us": 20.0, "violations_by_property": {"TradingIntegrity": 2}}
		assert commands.delta(before, after) == {
			"trades": -2,
			"mean_lead_time_us": None,
			"violations_by_property": {"QueueIntegrity": -1, "TradingIntegrity": 2},
		}


class TestEntryPoint:

	def test_parser(self):
		args = marketsim.build_parser().parse_args(["run", "--scenario", "snipe_baseline", "--out", "x", "--override", "seed=3", "--override", "venues[0].dark=true"])
		assert (args.command, args.scenario, args.seed) == ("run", "snipe_baseline", None)
		assert args.override == ["seed=3", "venues[0].dark=true"]

	def test_compare_requires_toggle(self):
		with pytest.raises(SystemExit):
			marketsim.build_parser().parse_args(["compare", "--scenario", "x", "--out", "y"])
