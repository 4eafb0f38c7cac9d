"""Perfect orientations, flows, Plücker vectors and face coordinates of
edge-weighted plabic graphs.

Every edge carries a reference direction: white to black between internal
vertices, away from the internal vertex toward the boundary on a stub at a
white vertex and toward it on a stub at a black vertex, lower id to higher id
on a same-coloured edge.  Traversing an edge along its reference contributes
its weight, against it the inverse.  Rescaling every edge at one internal
vertex by the same factor is then a gauge transformation.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .plabic_core import BLACK, BOUNDARY, WHITE, GraphError, PlabicGraph, validate_graph
from .square_move import STANDARD, FaceCoordinates
from .strand_diagrams import is_reduced, zig_zag_strands

Subset = tuple[int, ...]


class OrientationError(GraphError):
    pass


@dataclass(frozen=True)
class EdgeWeights:
    weight: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        for e, w in self.weight.items():
            if w == 0:
                raise ValueError(f"edge {e} has weight 0")

    def gauge(self, g: PlabicGraph, vertex: int, factor: Fraction) -> EdgeWeights:
        """Multiply every edge at an internal vertex by ``factor``."""
        if g.colors[vertex] == BOUNDARY:
            raise GraphError("boundary vertices are framed; no gauge there")
        w = dict(self.weight)
        for d in g.rotation[vertex]:
            w[d >> 1] = w[d >> 1] * factor
        return EdgeWeights(w)

    def to_json(self) -> dict:
        return {str(e): str(w) for e, w in sorted(self.weight.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> EdgeWeights:
        return cls({int(e): Fraction(w) for e, w in data.items()})


def unit_weights(g: PlabicGraph) -> EdgeWeights:
    return EdgeWeights({e: Fraction(1) for e in g.edges})


def reference_tail(g: PlabicGraph, e: int) -> int:
    """Tail vertex of the reference direction of edge ``e``."""
    a, b = g.edges[e]
    ca, cb = g.colors[a], g.colors[b]
    if ca == BOUNDARY or cb == BOUNDARY:
        inner, outer = (b, a) if ca == BOUNDARY else (a, b)
        return inner if g.colors[inner] == WHITE else outer
    if ca != cb:
        return a if ca == WHITE else b
    return min(a, b)


def dart_weight(g: PlabicGraph, w: EdgeWeights, d: int) -> Fraction:
    e = d >> 1
    x = Fraction(w.weight[e])
    return x if g.vertex_of(d) == reference_tail(g, e) else 1 / x


# -- perfect orientations -------------------------------------------------------


@dataclass(frozen=True)
class PerfectOrientation:
    direction: Mapping[int, tuple[int, int]]  # edge id -> (from, to)
    source_set: Subset


def _is_acyclic(adj: Mapping[int, list[int]]) -> bool:
    state: dict[int, int] = {}
    for root in adj:
        if root in state:
            continue
        stack = [(root, iter(adj[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[v] = 2
                stack.pop()
                continue
            s = state.get(nxt)
            if s == 1:
                return False
            if s is None:
                state[nxt] = 1
                stack.append((nxt, iter(adj.get(nxt, ()))))
    return True


def _orientations(g: PlabicGraph) -> Iterable[dict[int, tuple[int, int]]]:
    """All perfect orientations, by backtracking over edges."""
    internal = g.internal_vertices
    special_in = {v: g.colors[v] == WHITE for v in internal}
    order = sorted(g.edges)
    remaining = {v: g.degree(v) for v in internal}
    special = {v: 0 for v in internal}
    direction: dict[int, tuple[int, int]] = {}

    def is_special(v: int, frm: int, to: int) -> bool:
        return (to == v) if special_in[v] else (frm == v)

    def rec(idx: int) -> Iterable[dict[int, tuple[int, int]]]:
        if idx == len(order):
            if all(special[v] == 1 for v in internal):
                yield dict(direction)
            return
        e = order[idx]
        a, b = g.edges[e]
        for frm, to in ((a, b), (b, a)):
            ok = True
            touched = []
            for v in {a, b}:
                if v not in special:
                    continue
                remaining[v] -= 1
                touched.append(v)
                if is_special(v, frm, to):
                    special[v] += 1
            for v in touched:
                if special[v] > 1 or special[v] + remaining[v] < 1:
                    ok = False
            if ok:
                direction[e] = (frm, to)
                yield from rec(idx + 1)
                del direction[e]
            for v in touched:
                remaining[v] += 1
                if is_special(v, frm, to):
                    special[v] -= 1

    yield from rec(0)


def perfect_orientations(g: PlabicGraph, acyclic_only: bool = True) -> Iterable[PerfectOrientation]:
    for direction in _orientations(g):
        adj: dict[int, list[int]] = {v: [] for v in g.colors}
        for frm, to in direction.values():
            adj[frm].append(to)
        if acyclic_only and not _is_acyclic(adj):
            continue
        sources = tuple(sorted(g.label_of(v) for v in g.boundary if adj[v]))
        yield PerfectOrientation(direction, sources)


def perfect_orientation(g: PlabicGraph, sources: Iterable[int] | None = None) -> PerfectOrientation:
    """First acyclic perfect orientation found, optionally with a given source set."""
    rep = validate_graph(g)
    if not rep.ok:
        raise GraphError("; ".join(rep.violations))
    want = None if sources is None else tuple(sorted(sources))
    for po in perfect_orientations(g):
        if want is None or po.source_set == want:
            return po
    extra = "" if want is None else f" with sources {want}"
    raise OrientationError(f"graph has no acyclic perfect orientation{extra}")


# -- flows ----------------------------------------------------------------------


@dataclass(frozen=True)
class Flow:
    paths: tuple[tuple[int, ...], ...]  # dart sequences, one per non-closed component

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(d >> 1 for p in self.paths for d in p)


def _out_darts(g: PlabicGraph, po: PerfectOrientation) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {v: [] for v in g.colors}
    for e, (frm, _) in po.direction.items():
        a, _b = g.edges[e]
        out[frm].append(2 * e if a == frm else 2 * e + 1)
    return out


def enumerate_flows(g: PlabicGraph, po: PerfectOrientation, J: Sequence[int]) -> list[Flow]:
    """Vertex-disjoint path systems from I minus J to J minus I."""
    I = set(po.source_set)
    Js = set(J)
    if len(Js) != len(I):
        raise ValueError(f"J must have {len(I)} elements")
    sources = [g.boundary[i - 1] for i in sorted(I - Js)]
    targets = {g.boundary[j - 1] for j in Js - I}
    out = _out_darts(g, po)
    flows: list[Flow] = []
    used: set[int] = set()
    chosen: list[tuple[int, ...]] = []

    def paths_from(v: int, path: list[int]) -> Iterable[tuple[tuple[int, ...], int]]:
        for d in out[v]:
            u = g.head(d)
            if u in used:
                continue
            if g.colors[u] == BOUNDARY:
                if u in targets:
                    yield tuple(path + [d]), u
                continue
            used.add(u)
            yield from paths_from(u, path + [d])
            used.discard(u)

    def rec(i: int) -> None:
        if i == len(sources):
            flows.append(Flow(tuple(chosen)))
            return
        s = sources[i]
        used.add(s)
        for p, t in list(paths_from(s, [])):
            inner = {g.head(d) for d in p}
            if inner & used:
                continue
            used.update(inner)
            chosen.append(p)
            rec(i + 1)
            chosen.pop()
            used.difference_update(inner)
        used.discard(s)

    rec(0)
    return flows


def flow_weight(g: PlabicGraph, w: EdgeWeights, f: Flow) -> Fraction:
    out = Fraction(1)
    for p in f.paths:
        for d in p:
            out *= dart_weight(g, w, d)
    return out


# -- Plücker vectors ------------------------------------------------------------


@dataclass(frozen=True)
class PluckerVector:
    k: int
    n: int
    values: Mapping[Subset, Fraction]

    def __getitem__(self, J: Iterable[int]) -> Fraction:
        return self.values[tuple(sorted(J))]

    def support(self) -> set[Subset]:
        return {J for J, x in self.values.items() if x != 0}

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["subset", "numerator", "denominator"])
        for J in sorted(self.values):
            x = self.values[J]
            wr.writerow([" ".join(map(str, J)), x.numerator, x.denominator])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "values": {" ".join(map(str, J)): str(x) for J, x in sorted(self.values.items())}}


def _delta(g: PlabicGraph, po: PerfectOrientation, w: EdgeWeights, J: Subset) -> Fraction:
    return sum((flow_weight(g, w, f) for f in enumerate_flows(g, po, J)), Fraction(0))


def _delta_chunk(args: tuple) -> list[tuple[Subset, Fraction]]:
    g_json, po, w, chunk = args
    g = PlabicGraph.from_json(g_json)
    return [(J, _delta(g, po, w, J)) for J in chunk]


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("PLABIC_LAB_JOBS", "1")))
    except ValueError:
        return 1


def plucker_vector(
    g: PlabicGraph,
    w: EdgeWeights,
    po: PerfectOrientation | None = None,
    jobs: int = 1,
) -> PluckerVector:
    """Flow sums over every k-subset; the source set gets the value 1."""
    if po is None:
        po = perfect_orientation(g)
    k, n = len(po.source_set), g.n
    subsets = list(itertools.combinations(range(1, n + 1), k))
    if jobs <= 1 or len(subsets) < 2 * jobs:
        values = {J: _delta(g, po, w, J) for J in subsets}
    else:
        chunks = [subsets[i::jobs] for i in range(jobs)]
        gj = g.to_json()
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_delta_chunk, [(gj, po, w, c) for c in chunks])
        values = dict(itertools.chain.from_iterable(parts))
        values = {J: values[J] for J in subsets}
    return PluckerVector(k, n, values)


def _sorted_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    size = len(m)
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, size):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def matrix_from_plucker(pv: PluckerVector) -> list[list[Fraction]]:
    """k x n matrix with minors proportional to ``pv``, built from the
    coordinates adjacent to one nonzero coordinate."""
    I = next((J for J in sorted(pv.values) if pv.values[J] != 0), None)
    if I is None:
        raise ValueError("zero Plücker vector")
    base = pv.values[I]
    rows = []
    for a in range(pv.k):
        row = []
        for j in range(1, pv.n + 1):
            if j in I and j != I[a]:
                row.append(Fraction(0))
                continue
            seq = list(I)
            seq[a] = j
            row.append(_sorted_sign(seq) * pv.values[tuple(sorted(seq))] / base)
        rows.append(row)
    return rows


def minors(A: Sequence[Sequence[Fraction]]) -> dict[Subset, Fraction]:
    k, n = len(A), len(A[0])
    return {
        J: _det([[A[a][j - 1] for j in J] for a in range(k)])
        for J in itertools.combinations(range(1, n + 1), k)
    }


def is_plucker_point(pv: PluckerVector, absolute: bool = False) -> bool:
    """True when ``pv`` is the vector of maximal minors of a matrix, up to scale."""
    I = next((J for J in sorted(pv.values) if pv.values[J] != 0), None)
    if I is None:
        return False
    A = matrix_from_plucker(pv)
    scale = pv.values[I]
    for J, m in minors(A).items():
        lhs, rhs = m * scale, pv.values[J]
        if (abs(lhs) != abs(rhs)) if absolute else (lhs != rhs):
            return False
    return True


def same_up_to_scale(a: Mapping[Subset, Fraction], b: Mapping[Subset, Fraction]) -> bool:
    """Exact proportionality of two vectors on the same index set."""
    if set(a) != set(b):
        return False
    ratio = None
    for J in a:
        x, y = a[J], b[J]
        if (x == 0) != (y == 0):
            return False
        if x == 0:
            continue
        r = y / x
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return True


# -- face coordinates -----------------------------------------------------------


def face_holonomy(g: PlabicGraph, w: EdgeWeights, face: int) -> Fraction:
    """Transport around ``face`` with the face on the right.

    For the boundary face between stubs i and i+1 this is the transport from
    stub i to stub i+1 through the graph.
    """
    out = Fraction(1)
    for d in g.faces[face].walk:
        out *= dart_weight(g, w, d ^ 1)
    return out


def face_coordinates(
    g: PlabicGraph,
    w: EdgeWeights,
    include_boundary: bool = False,
    strict: bool = True,
) -> FaceCoordinates:
    """Face holonomies, standard convention.

    With ``strict`` a walk crossing an edge between two internal vertices of
    the same colour is an error, since the exponent rule needs a white and a
    black end.
    """
    rep = validate_graph(g)
    if not rep.ok:
        raise GraphError("; ".join(rep.violations))
    vals = {}
    for f in g.faces:
        if not (f.is_interior or include_boundary):
            continue
        if strict:
            for d in f.walk:
                a, b = g.edges[d >> 1]
                if g.colors[a] == g.colors[b] and g.colors[a] in (WHITE, BLACK):
                    raise GraphError(f"face {f.id} crosses same-coloured edge {d >> 1}")
        vals[f.id] = face_holonomy(g, w, f.id)
    return FaceCoordinates(vals, STANDARD)


def _dual_tree_order(g: PlabicGraph, tree: set[int], root_face: int) -> list[tuple[int, int]]:
    """(face, edge) pairs: peel faces whose only unsolved edge is ``edge``."""
    unsolved: dict[int, set[int]] = {f.id: set() for f in g.faces}
    for f in g.faces:
        for d in f.walk:
            if d >> 1 not in tree:
                unsolved[f.id].add(d >> 1)
    order = []
    done = {root_face}
    progress = True
    while progress:
        progress = False
        for f in g.faces:
            if f.id in done or len(unsolved[f.id]) != 1:
                continue
            (e,) = unsolved[f.id]
            order.append((f.id, e))
            done.add(f.id)
            for h in unsolved.values():
                h.discard(e)
            progress = True
    if len(done) != len(g.faces):
        raise GraphError("could not peel the dual tree")
    return order


def weights_from_face_coordinates(g: PlabicGraph, fc: FaceCoordinates) -> EdgeWeights:
    """Edge weights with the given holonomy on every face.

    Needs a value for every face, boundary faces included, with product 1.
    Weights are 1 on a spanning tree of the graph with its boundary collapsed.
    """
    vals = fc.to_standard().values
    if set(vals) != {f.id for f in g.faces}:
        raise ValueError("need a coordinate for every face")
    prod = Fraction(1)
    for x in vals.values():
        prod *= x
    if prod != 1:
        raise ValueError(f"face coordinates multiply to {prod}, not 1")
    root = -1
    rep = {v: root for v in g.boundary}
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    tree = set()
    for e in sorted(g.edges):
        a, b = g.edges[e]
        ra, rb = find(rep.get(a, a)), find(rep.get(b, b))
        if ra != rb:
            parent[ra] = rb
            tree.add(e)
    weights = {e: Fraction(1) for e in g.edges}
    root_face = g.boundary_face(g.n)
    for face, e in _dual_tree_order(g, tree, root_face):
        weights[e] = Fraction(1)
        rest = Fraction(1)
        own = None
        for d in g.faces[face].walk:
            if d >> 1 == e:
                own = d
            else:
                rest *= dart_weight(g, EdgeWeights(weights), d ^ 1)
        assert own is not None
        needed = vals[face] / rest
        if sum(1 for d in g.faces[face].walk if d >> 1 == e) != 1:
            raise GraphError(f"edge {e} appears twice on face {face}")
        forward = g.vertex_of(own ^ 1) == reference_tail(g, e)
        weights[e] = needed if forward else 1 / needed
    return EdgeWeights(weights)


# -- face labels and weak separation -------------------------------------------


def _side(g: PlabicGraph, darts: Sequence[int]) -> set[int]:
    """Faces reachable from the left face of the first dart without crossing
    an edge the strand runs along."""
    blocked = {d >> 1 for d in darts}
    start = g.face_of_dart[darts[0]]
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for d in g.faces[f].walk:
            if d >> 1 in blocked:
                continue
            h = g.face_of_dart[d ^ 1]
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return seen


def face_labels(g: PlabicGraph) -> dict[int, Subset]:
    """Label each face by the targets of the strands having it on their left.

    The flood fill starts from the face left of the strand's first dart, which
    is the side away from the strand's turning corners; the label uses the
    complementary side.
    """
    rep = is_reduced(g)
    if not rep.ok:
        raise GraphError("face labels need a reduced graph: " + "; ".join(rep.violations))
    strands, _ = zig_zag_strands(g)
    labels: dict[int, list[int]] = {f.id: [] for f in g.faces}
    for s in strands:
        if s.endpoints is None or not s.darts:
            continue
        away = _side(g, s.darts)
        for f in labels:
            if f not in away:
                labels[f].append(s.endpoints[1])
    return {f: tuple(sorted(v)) for f, v in labels.items()}


def weakly_separated(A: Iterable[int], B: Iterable[int], n: int) -> bool:
    A, B = set(A), set(B)
    if len(A) != len(B):
        raise ValueError("weak separation compares subsets of equal size")
    a_only, b_only = A - B, B - A
    if not a_only:
        return True
    for shift in range(n):
        pos = lambda x: (x - 1 - shift) % n  # noqa: E731
        if max(pos(x) for x in a_only) < min(pos(x) for x in b_only):
            return True
    return False


def pairwise_weakly_separated(family: Iterable[Iterable[int]], n: int) -> bool:
    sets = [tuple(s) for s in family]
    return all(weakly_separated(a, b, n) for a, b in itertools.combinations(sets, 2))


def weights_to_json(w: EdgeWeights) -> str:
    return json.dumps(w.to_json(), sort_keys=True)
