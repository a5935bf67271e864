# -*- coding: utf-8 -*-
"""Seeded random substreams, one per named entity.

Each tag hashes (crc32, never hash()) into the spawn key of a SeedSequence
under the master seed, and drives a counter-based Philox generator. Adding
an entity never shifts anybody else's draws.
"""
import zlib

import numpy as np


def tag_key(tag):
	return zlib.crc32(str(tag).encode("utf-8")) & 0xFFFFFFFF


class Streams:

	def __init__(self, master_seed):
		self.master_seed = int(master_seed)

	def seed_sequence(self, tag):
		return np.random.SeedSequence(self.master_seed, spawn_key=(tag_key(tag),))

	def generator(self, tag):
		return np.random.Generator(np.random.Philox(self.seed_sequence(tag)))

	__call__ = generator
