# -*- coding: utf-8 -*-
import os

# overrides app_path() for config and logs when set
directory = None


def app_path():
	return os.path.dirname(os.path.abspath(__file__))

def _portable_dir(name):
	global directory
	if directory != None: path = os.path.join(directory, name)
	else: path = os.path.join(app_path(), name)
	if not os.path.exists(path):
		os.makedirs(path)
	return path

def config_path():
	return _portable_dir("config")

def logs_path():
	return _portable_dir("logs")

def scenarios_path():
	return os.path.join(app_path(), "scenarios")

def scenario_file(name):
	"Resolves a bundled scenario name (with or without .json) to its path."
	if not name.endswith(".json"):
		name = name + ".json"
	return os.path.join(scenarios_path(), name)
