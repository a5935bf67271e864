from .errors import EngineError, DuplicateOrderId, UnknownInstrument, UnknownOrder, InvalidModification, InvalidOrder
from .orders import (
	Side, OrderKind, TimeInForce, DisplayState, DisplayClass, Replenish, MatchingAlgo,
	Order, Trade, BookEvent, rank_key, PRIORITY_HEAD, PRIORITY_NORMAL,
)
from .book import OrderBook, PriceLevel
from .matching import (
	validate_order, crosses, match, insert_order, accumulate_order, match_fifo, match_pro_rata, allocate_pro_rata,
	cancel_order, modify_order, amend_order, replenish_reserve, discretion_reach, discretionary_probe,
)
from .auction import clear_batch_auction
from .views import BookView, LevelView, OrderView, QuoteView, book_snapshot, best_quotes
