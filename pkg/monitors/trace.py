# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass
from typing import Any

from pubsub import pub

log = logging.getLogger("monitors.trace")

TOPICS = ("trade", "book", "report", "order", "feed", "observation")


def publish(run_id, topic, record):
	pub.sendMessage(topic, run_id=run_id, record=record)


@dataclass(frozen=True)
class TraceRecord:
	event_id: int
	topic: str
	ts: int
	data: Any


class Trace:
	"""Everything a run published, in publication order.

	Subscribes on construction and filters by run_id, so overlapping runs in
	one process keep separate traces.
	"""

	def __init__(self, run_id):
		self.run_id = run_id
		self.records = []
		self._open = False
		self.open()

	def open(self):
		if self._open:
			return
		for topic in TOPICS:
			pub.subscribe(self.on_record, topic)
		self._open = True

	def close(self):
		if not self._open:
			return
		for topic in TOPICS:
			try:
				pub.unsubscribe(self.on_record, topic)
			except Exception:
				log.exception(F"error unsubscribing trace {self.run_id} from {topic}")
		self._open = False

	def on_record(self, run_id, record, topic=pub.AUTO_TOPIC):
		if run_id != self.run_id:
			return
		self.append(topic.getName(), record)

	def append(self, topic, record):
		rec = TraceRecord(len(self.records), topic, getattr(record, "ts", 0), record)
		self.records.append(rec)
		return rec

	def __len__(self):
		return len(self.records)

	def of(self, topic, kind=None):
		return [r for r in self.records if r.topic == topic and (kind is None or isinstance(r.data, kind))]

	def data(self, topic, kind=None):
		return [r.data for r in self.of(topic, kind)]
