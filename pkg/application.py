# -*- coding: utf-8 -*-

name = 'Market Simulator'
short_name = 'marketsim'
version = "0.4"
authors = ["marketsim contributors"]
copyright = "Copyright (C) 2026, marketsim contributors."
description = name + " is a deterministic multi-venue exchange simulator for measuring latency and order-type attacks and the countermeasures against them."
