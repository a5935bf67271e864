class VenueError(Exception):
	pass


class MalformedMessage(VenueError):
	"""A gateway message missing fields its type requires."""
