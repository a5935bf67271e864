class SimnetError(Exception):
	pass

class SchedulingInPast(SimnetError):
	pass

class UnknownEndpoint(SimnetError):
	pass
