from .errors import SimnetError, SchedulingInPast, UnknownEndpoint
from .streams import Streams
from .scheduler import Event, Scheduler, Wakeup
from .network import Link, Network
from .sip import SIP_ID, NbboQuote, ConsolidatedQuote, SipState, compute_nbbo
from .consumer import ConsumerModel, consumer_ingest, consumer_staleness
