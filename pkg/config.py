# -*- coding: utf-8 -*-
import os
import config_utils
import paths
import logging

log = logging.getLogger("config")

MAINFILE = "marketsim.ini"
MAINSPEC = "marketsim.defaults"
app = None

# used when setup() was never called (library use, tests)
DEFAULTS = {
 "general": {"log_level": "info", "events_log": False, "scenario_dir": ""},
 "defaults": {
  "sip_latency_us": 90,
  "default_latency_us": 100,
  "l2_depth": 10,
  "generic_participant_id": "ANON",
  "otr_threshold": 50,
  "otr_window_us": 1000000,
  "staleness_threshold_us": 10000,
  "scalper_markup_ticks": 1,
  "fingerprint_epsilon_us": 50,
  "protection_policy": "route",
 },
}


def setup ():
 global app
 log.debug("Loading app settings...")
 app = config_utils.load_config(os.path.join(paths.config_path(), MAINFILE), os.path.join(paths.app_path(), MAINSPEC))

def get(section, key):
 "Reads a setting, falling back to the built-in default."
 if app is not None:
  try:
   return app[section][key]
  except KeyError:
   log.debug(F"{section}.{key} missing from settings, using default")
 return DEFAULTS[section][key]

def default(key):
 return get("defaults", key)
