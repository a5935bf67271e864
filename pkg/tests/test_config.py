# -*- coding: utf-8 -*-
import os

import pytest
from configobj import ConfigObj
from validate import Validator

import config
import config_utils
import logger
import paths
from timer import Timer

SPEC = os.path.join(paths.app_path(), config.MAINSPEC)


@pytest.fixture
def settings_file(tmp_path):
	def write(text):
		path = tmp_path / config.MAINFILE
		path.write_text(text, encoding="utf-8")
		return str(path)
	return write


class TestSettings:

	def test_defaults_fill_an_empty_file(self, settings_file):
		app = config_utils.load_config(settings_file(""), SPEC)
		assert app["defaults"]["sip_latency_us"] == 90
		assert app["defaults"]["protection_policy"] == "route"
		assert app["general"]["events_log"] is False

	def test_values_are_converted(self, settings_file):
		app = config_utils.load_config(settings_file("[defaults]\nl2_depth = 3\n[general]\nevents_log = True\n"), SPEC)
		assert app["defaults"]["l2_depth"] == 3
		assert app["general"]["events_log"] is True

	def test_invalid_value_falls_back(self, settings_file):
		app = config_utils.load_config(settings_file("[defaults]\nl2_depth = zero\notr_threshold = 0\n"), SPEC)
		assert app["defaults"]["l2_depth"] == 10
		assert app["defaults"]["otr_threshold"] == 50

	def test_describe_errors(self, settings_file):
		spec = ConfigObj(SPEC, encoding="UTF8", list_values=False, _inspec=True)
		app = ConfigObj(infile=settings_file("[defaults]\nl2_depth = zero\n"), configspec=spec, encoding="UTF8")
		problems = config_utils.describe_errors(app, app.validate(Validator(), preserve_errors=True))
		assert len(problems) == 1
		assert problems[0].startswith("defaults.l2_depth: ")

	def test_get_without_setup(self, monkeypatch):
		monkeypatch.setattr(config, "app", None)
		assert config.default("generic_participant_id") == "ANON"
		assert config.get("general", "scenario_dir") == ""

	def test_get_prefers_loaded_settings(self, monkeypatch, settings_file):
		monkeypatch.setattr(config, "app", config_utils.load_config(settings_file("[defaults]\notr_window_us = 500\n"), SPEC))
		assert config.default("otr_window_us") == 500
		assert config.default("otr_threshold") == 50


class TestEventsLog:

	@pytest.mark.parametrize("env, flag, expected", [
		("events", False, True),
		("off", True, False),
		("", True, True),
		("", False, False),
		("EVENTS ", False, True),
	])
	def test_enabled(self, monkeypatch, env, flag, expected):
		monkeypatch.setenv("MARKETSIM_LOG", env)
		assert logger.events_enabled(flag) is expected

	def test_file_per_run(self, tmp_path):
		handler = logger.open_events_log(str(tmp_path))
		try:
			logger.events.info("100\t1\tA\tE1\tnew")
		finally:
			logger.close_events_log(handler)
		assert (tmp_path / logger.EVENTS_LOG_FILE).read_text(encoding="utf-8") == "100\t1\tA\tE1\tnew\n"
		assert handler not in logger.events.handlers


def test_timer_laps():
	timer = Timer()
	first = timer.lap("build")
	second = timer.lap("run")
	assert 0 <= first <= second
	assert [label for label, value in timer.laps] == ["build", "run"]
