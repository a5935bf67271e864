# -*- coding: utf-8 -*-
import os
import logging
from logging.handlers import RotatingFileHandler
import paths

APP_LOG_FILE = 'debug.log'
ERROR_LOG_FILE = "error.log"
EVENTS_LOG_FILE = "events.log"
MESSAGE_FORMAT = "%(asctime)s %(name)s %(threadName)s %(levelname)s: %(message)s"
DATE_FORMAT = "%d/%m/%Y %H:%M:%S"

formatter = logging.Formatter(MESSAGE_FORMAT, datefmt=DATE_FORMAT)

# one line per simulation event; kept out of the root handlers
events = logging.getLogger("events")
events.propagate = False
events.setLevel(logging.INFO)

LEVELS = {"debug": logging.DEBUG, "info": logging.INFO, "warning": logging.WARNING, "error": logging.ERROR}

logger = logging.getLogger()


def setup(level="debug"):
	logger.setLevel(LEVELS.get(level, logging.DEBUG))

	app_handler = RotatingFileHandler(os.path.join(paths.logs_path(), APP_LOG_FILE), mode="w", encoding="utf-8", maxBytes=5 * 1024 * 1024, backupCount=2)
	app_handler.setFormatter(formatter)
	app_handler.setLevel(logging.DEBUG)
	logger.addHandler(app_handler)

	error_handler = logging.FileHandler(os.path.join(paths.logs_path(), ERROR_LOG_FILE), mode="w", encoding="utf-8")
	error_handler.setFormatter(formatter)
	error_handler.setLevel(logging.ERROR)
	logger.addHandler(error_handler)

def events_enabled(settings_flag=False):
	"The MARKETSIM_LOG environment variable wins over the settings file."
	value = os.environ.get("MARKETSIM_LOG", "").strip().lower()
	if value == "events":
		return True
	if value == "off":
		return False
	return bool(settings_flag)

def open_events_log(out_dir):
	handler = logging.FileHandler(os.path.join(out_dir, EVENTS_LOG_FILE), mode="w", encoding="utf-8")
	handler.setFormatter(logging.Formatter("%(message)s"))
	events.addHandler(handler)
	return handler

def close_events_log(handler):
	events.removeHandler(handler)
	handler.close()
