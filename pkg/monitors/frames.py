# -*- coding: utf-8 -*-
"""Tabular views of a trace."""
import pandas as pd

TRADE_COLUMNS = ["ts_us", "venue", "instrument", "price_ticks", "qty", "taker_order", "maker_order", "aggressor_side"]


def trades_frame(trace):
	"""Every trade in execution order: the trades.csv columns plus buyer, seller and trade_id."""
	rows = [
		(t.ts, t.venue_id, t.instrument_id, t.price, t.qty, t.taker_order_id, t.maker_order_id, t.aggressor_side.value, t.buyer_id, t.seller_id, t.trade_id)
		for t in trace.data("trade")
	]
	return pd.DataFrame(rows, columns=TRADE_COLUMNS + ["buyer", "seller", "trade_id"])


def _signed(trades):
	buys = pd.DataFrame({"agent": trades["buyer"], "instrument": trades["instrument"], "qty": trades["qty"], "cash": -trades["qty"] * trades["price_ticks"]})
	sells = pd.DataFrame({"agent": trades["seller"], "instrument": trades["instrument"], "qty": -trades["qty"], "cash": trades["qty"] * trades["price_ticks"]})
	return pd.concat([buys, sells], ignore_index=True)


def positions(trades):
	"""(agent, instrument) -> net quantity."""
	if trades.empty:
		return {}
	net = _signed(trades).groupby(["agent", "instrument"])["qty"].sum()
	return {key: int(q) for key, q in net.items()}


def pnl_by_participant(trades, values):
	"""Cash plus inventory marked at values[instrument], per agent, in ticks."""
	if trades.empty:
		return {}
	signed = _signed(trades)
	signed["mark"] = signed["instrument"].map(lambda i: values.get(i, 0)) * signed["qty"]
	pnl = signed.groupby("agent")[["cash", "mark"]].sum()
	return {agent: int(row["cash"] + row["mark"]) for agent, row in pnl.iterrows()}


def conservation(trace, trades):
	"""Buy-side and sell-side fill quantity per instrument, from the execution reports.

	Balanced means both sides match and net positions sum to zero.
	"""
	res = {}
	for r in trace.data("report"):
		if r.status.value != "fill":
			continue
		entry = res.setdefault(r.instrument_id, {"bought": 0, "sold": 0})
		entry["bought" if r.side.value == "buy" else "sold"] += r.qty
	net = {}
	for (agent, instrument), qty in positions(trades).items():
		net[instrument] = net.get(instrument, 0) + qty
	for instrument in sorted(set(res) | set(net)):
		entry = res.setdefault(instrument, {"bought": 0, "sold": 0})
		entry["net_position"] = net.get(instrument, 0)
		entry["balanced"] = entry["bought"] == entry["sold"] and entry["net_position"] == 0
	return res
