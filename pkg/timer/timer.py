# Copyright (C) 2018  LuciaSoftware and it's contributors.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation, version 3 of the License.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with this program.  If not, see https://github.com/LuciaSoftware/lucia/blob/master/LICENSE.

import time


class Timer:
	"""Wall-clock stopwatch in millis, used to time scenario runs.

	Simulation time never comes from here; it only reports how long a run took.
	"""

	def __init__(self):
		self.inittime = time.perf_counter()
		self.laps = []

	@property
	def elapsed(self):
		"""Milliseconds since the timer was created."""
		return self._ms(time.perf_counter() - self.inittime)

	def lap(self, label):
		"""Records the elapsed time under a label and returns it."""
		value = self.elapsed
		self.laps.append((label, value))
		return value

	def _ms(self, t):
		return int(round(t*1000))
