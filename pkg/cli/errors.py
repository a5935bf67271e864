# -*- coding: utf-8 -*-


class ScenarioError(Exception):
	"""A scenario that does not parse or does not validate.

	path names the offending field (venues[0].speed_bump_in_us); line and
	column locate JSON syntax errors.
	"""

	def __init__(self, message, path=None, line=None, column=None):
		self.message = message
		self.path = path
		self.line = line
		self.column = column
		super().__init__(self.describe())

	def describe(self):
		if self.line is not None:
			return F"line {self.line} column {self.column}: {self.message}"
		if self.path:
			return F"{self.path}: {self.message}"
		return self.message
