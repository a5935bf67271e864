# -*- coding: utf-8 -*-
"""Command-line entry point.

marketsim.py run --scenario <path> [--seed N] --out <dir> [--override path=value]...
marketsim.py compare --scenario <path> --seed N --toggle path=value --out <dir>
"""
import argparse
import logging
import sys

import application
import config
import logger
from config_utils import ConfigLoadError
from cli import commands

log = logging.getLogger("marketsim")


def build_parser():
	parser = argparse.ArgumentParser(prog=application.short_name, description=application.description)
	parser.add_argument("--version", action="version", version=F"{application.name} {application.version}")
	sub = parser.add_subparsers(dest="command", required=True)

	run = sub.add_parser("run", help="run one scenario and write its reports")
	run.add_argument("--scenario", required=True, help="scenario file, or the name of a bundled scenario")
	run.add_argument("--seed", type=int, default=None, help="master seed (default: the scenario's)")
	run.add_argument("--out", required=True, help="output directory")
	run.add_argument("--override", action="append", default=[], metavar="PATH=VALUE", help="change one scenario field; may be repeated")

	compare = sub.add_parser("compare", help="run a scenario with and without a countermeasure")
	compare.add_argument("--scenario", required=True)
	compare.add_argument("--seed", type=int, default=None)
	compare.add_argument("--toggle", action="append", required=True, metavar="PATH=VALUE", help="the countermeasure; may be repeated")
	compare.add_argument("--out", required=True)
	compare.add_argument("--override", action="append", default=[], metavar="PATH=VALUE")
	return parser


def main(argv=None):
	args = build_parser().parse_args(argv)
	try:
		config.setup()
	except ConfigLoadError as e:
		print(F"warning: {e}, using default settings", file=sys.stderr)
	logger.setup(config.get("general", "log_level"))
	log.info(F"{application.name} {application.version}: {args.command} {args.scenario}")
	if args.command == "run":
		return commands.run(args.scenario, args.out, args.seed, args.override)
	return commands.compare(args.scenario, args.out, args.toggle, args.seed, args.override)


if __name__ == "__main__":
	sys.exit(main())
