from __future__ import annotations

import functools

import pytest

from plabic_lab.exchange_explorer import ExchangeGraph, move_orbit
from plabic_lab.generators import big_cell_graph


@functools.lru_cache(maxsize=None)
def top_cell_orbit(k: int, n: int) -> ExchangeGraph:
    return move_orbit(big_cell_graph(k, n))


@pytest.fixture
def orbit():
    return top_cell_orbit
