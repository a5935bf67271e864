from .records import (
	GatewayRecord, FeedRecord, StalenessSample, HiddenLiquidityBelief, FingerprintGuess,
	SnipeCapture, ScalpRecord, SignalJump, QueueJumpRecord,
)
from .trace import TOPICS, Trace, TraceRecord, publish
from .violations import Property, Violation
from .audit import audit_queue_integrity
from .frames import TRADE_COLUMNS, trades_frame, pnl_by_participant, positions, conservation
from .measures import (
	AnonymityReport, ConfidentialityReport, Detection, measure_anonymity, measure_confidentiality,
	measure_fair_access, measure_info_symmetry, flag_trading_integrity, flag_anonymity, flag_confidentiality,
	flag_fair_access, flag_info_symmetry,
	order_to_trade_ratios, order_to_trade_windows,
)
from .metrics import MetricsReport, MonitorSettings, build_metrics, feed_counts
