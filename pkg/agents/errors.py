class AgentError(Exception):
	pass


class OrderTypeNotPermitted(AgentError):
	"""The agent does not know about the order type it tried to use."""
