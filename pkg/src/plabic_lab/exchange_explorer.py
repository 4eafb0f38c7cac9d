"""Square-move orbits, exchange graphs and filling counts."""

from __future__ import annotations

import json
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, TextIO

from .generators import big_cell_graph
from .plabic_core import GraphError, PlabicGraph
from .square_move import canonical_form, general_square_move, normalize, square_faces
from .strand_diagrams import is_reduced

DEFAULT_MAX_NODES = 100_000


class TruncatedError(RuntimeError):
    def __init__(self, count: int) -> None:
        super().__init__(f"orbit truncated after {count} nodes; count is a lower bound")
        self.count = count


@dataclass
class ExchangeGraph:
    nodes: list[PlabicGraph]
    keys: list[tuple]
    edges: list[tuple[int, int, int]]  # (node, face id in that node, node)
    root: int = 0
    truncated: bool = False
    _index: dict[tuple, int] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def neighbors(self, i: int) -> list[int]:
        return sorted({b for a, _, b in self.edges if a == i} | {a for a, _, b in self.edges if b == i})


def move_orbit(
    g: PlabicGraph,
    max_nodes: int = DEFAULT_MAX_NODES,
    progress: Callable[[int], None] | None = None,
) -> ExchangeGraph:
    """Breadth-first closure of ``g`` under square moves, up to isomorphism."""
    rep = is_reduced(g)
    if not rep.ok:
        raise GraphError("move_orbit needs a reduced graph: " + "; ".join(rep.violations))
    start = normalize(g)
    key = canonical_form(start)
    eg = ExchangeGraph([start], [key], [])
    eg._index[key] = 0
    queue = deque([0])
    seen_edges: set[tuple[int, int]] = set()
    while queue:
        i = queue.popleft()
        h = eg.nodes[i]
        for f in square_faces(h):
            moved, _ = general_square_move(h, f)
            k = canonical_form(moved)
            j = eg._index.get(k)
            if j is None:
                if len(eg.nodes) >= max_nodes:
                    eg.truncated = True
                    continue
                j = len(eg.nodes)
                eg._index[k] = j
                eg.nodes.append(moved)
                eg.keys.append(k)
                queue.append(j)
                if progress is not None:
                    progress(len(eg.nodes))
            pair = (min(i, j), max(i, j))
            if pair not in seen_edges:
                seen_edges.add(pair)
                eg.edges.append((i, f, j))
    return eg


def count_fillings(k: int, n: int, max_nodes: int = DEFAULT_MAX_NODES, strict: bool = False) -> int:
    """Size of the square-move orbit of the top-cell graph of Gr(k,n).

    With ``strict`` a truncated search raises instead of returning a lower bound.
    """
    if not 1 <= k < n:
        raise GraphError("need 1 <= k < n")
    eg = move_orbit(big_cell_graph(k, n), max_nodes)
    if eg.truncated and strict:
        raise TruncatedError(len(eg))
    return len(eg)


def exchange_graph_to_json(eg: ExchangeGraph, labels: list[list[list[int]]] | None = None) -> str:
    data = {
        "nodes": [
            {"id": i, "labels": labels[i] if labels else None, "graph": g.to_json()}
            for i, g in enumerate(eg.nodes)
        ],
        "edges": [[a, f, b] for a, f, b in eg.edges],
        "root": eg.root,
        "truncated": eg.truncated,
    }
    return json.dumps(data, sort_keys=True)


def exchange_graph_to_dot(eg: ExchangeGraph, labels: list[list[list[int]]] | None = None) -> str:
    lines = ["graph exchange {"]
    for i in range(len(eg)):
        lab = " ".join("".join(map(str, s)) for s in labels[i]) if labels else str(i)
        lines.append(f'  n{i} [label="{lab}"];')
    for a, f, b in eg.edges:
        lines.append(f'  n{a} -- n{b} [label="F{f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def status(msg: str, stream: TextIO = sys.stderr) -> None:
    print(msg, file=stream, flush=True)
