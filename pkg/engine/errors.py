class EngineError(Exception):
	pass

class DuplicateOrderId(EngineError):
	pass

class UnknownInstrument(EngineError):
	pass

class UnknownOrder(EngineError):
	"""The order is not resting: already filled, canceled or never seen.

	Callers racing fills with cancels must tolerate this.
	"""

class InvalidModification(EngineError):
	pass

class InvalidOrder(EngineError):
	pass
