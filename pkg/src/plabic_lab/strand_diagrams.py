"""Zig-zag strands, reducedness, alternating colorings and Stokes fronts."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .plabic_core import BLACK, BOUNDARY, WHITE, GraphError, PlabicGraph, Report, validate_graph

NULL = "null"


@dataclass(frozen=True)
class Strand:
    darts: tuple[int, ...]
    endpoints: tuple[int, int] | None  # (source label, target label); None when closed

    @property
    def edge_midpoint_sequence(self) -> list[tuple[int, int]]:
        """(edge id, +1 if traversed first endpoint -> second, else -1)."""
        return [(d >> 1, 1 if d & 1 == 0 else -1) for d in self.darts]

    @property
    def closed(self) -> bool:
        return self.endpoints is None


@dataclass(frozen=True)
class TripPermutation:
    mapping: Mapping[int, int]

    @property
    def fixed_points(self) -> list[int]:
        return sorted(i for i, j in self.mapping.items() if i == j)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.mapping[i] for i in sorted(self.mapping))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TripPermutation):
            return NotImplemented
        return dict(self.mapping) == dict(other.mapping)

    def __hash__(self) -> int:
        return hash(self.as_tuple())


def strand_next(g: PlabicGraph, dart: int) -> int | None:
    """Dart taken after traversing ``dart``; None when the strand hits the boundary."""
    a = dart ^ 1
    v = g.vertex_of(a)
    c = g.colors[v]
    if c == BOUNDARY:
        return None
    return g.succ(a) if c == WHITE else g.pred(a)


def _trace(g: PlabicGraph) -> list[Strand]:
    used: set[int] = set()
    strands = []
    for label in range(1, g.n + 1):
        d: int | None = g.stub_dart(label)
        seq = []
        last = d
        while d is not None:
            used.add(d)
            seq.append(d)
            last = d
            d = strand_next(g, d)
        target = g.label_of(g.head(last))
        strands.append(Strand(tuple(seq), (label, target)))
    for d0 in g.darts:
        if d0 in used:
            continue
        seq = []
        d = d0
        while d not in used:
            used.add(d)
            seq.append(d)
            nxt = strand_next(g, d)
            assert nxt is not None
            d = nxt
        strands.append(Strand(tuple(seq), None))
    return strands


def zig_zag_strands(g: PlabicGraph) -> tuple[list[Strand], TripPermutation]:
    """Trace every strand; boundary strands come first, ordered by source label.

    At a white vertex a strand leaves along the counterclockwise successor of
    its arrival dart, at a black vertex along the clockwise one.
    """
    rep = validate_graph(g)
    if not rep.ok:
        raise GraphError("; ".join(rep.violations))
    strands = _trace(g)
    perm = {s.endpoints[0]: s.endpoints[1] for s in strands if s.endpoints is not None}
    return strands, TripPermutation(perm)


def trip_permutation(g: PlabicGraph) -> TripPermutation:
    return zig_zag_strands(g)[1]


def is_reduced(g: PlabicGraph) -> Report:
    """Check the five reducedness conditions on the strand diagram.

    Violations are prefixed with the number of the failing condition.
    """
    strands, _ = zig_zag_strands(g)
    rep = Report()
    # (1) every stub carries one outgoing and one incoming strand
    starts = [s.endpoints[0] for s in strands if s.endpoints]
    ends = [s.endpoints[1] for s in strands if s.endpoints]
    if sorted(starts) != sorted(ends) or len(set(starts)) != len(starts):
        rep.violations.append("(1) boundary orientations do not alternate")
    # (2) cusps do not occur in the combinatorial model.
    for idx, s in enumerate(strands):
        if s.closed:
            rep.violations.append(f"(5) strand {idx} is closed and never reaches the boundary")
        edges = [d >> 1 for d in s.darts]
        dup = sorted({e for e in edges if edges.count(e) > 1})
        if dup:
            rep.violations.append(f"(4) strand {idx} intersects itself on edges {dup}")
    position: list[dict[int, int]] = [
        {d >> 1: i for i, d in enumerate(s.darts)} for s in strands
    ]
    owner: dict[int, list[int]] = {}
    for idx, s in enumerate(strands):
        for d in s.darts:
            owner.setdefault(d >> 1, []).append(idx)
    shared: dict[tuple[int, int], list[int]] = {}
    for e, who in owner.items():
        if len(who) == 2 and who[0] != who[1]:
            a, b = sorted(who)
            shared.setdefault((a, b), []).append(e)
    for (a, b), es in sorted(shared.items()):
        if len(es) < 2:
            continue
        pa, pb = position[a], position[b]
        for e, f in itertools.combinations(es, 2):
            if (pa[e] < pa[f]) == (pb[e] < pb[f]):
                rep.violations.append(
                    f"(3) strands {a} and {b} form a parallel bigon on edges {e} and {f}"
                )
                break
    return rep


# -- alternating colorings ---------------------------------------------------


@dataclass(frozen=True)
class Border:
    id: int
    regions: tuple[int, int]
    hairs_into: int


@dataclass
class RegionModel:
    """Regions of a front complement with co-oriented borders.

    ``cycles[r]`` lists the borders met walking around region ``r``; two
    consecutive borders of a cycle meet at a crossing.  Open cycles end on the
    boundary of the disk.
    """

    regions: list[int]
    borders: list[Border]
    cycles: dict[int, list[tuple[tuple[int, ...], bool]]]
    label: dict[int, str] = field(default_factory=dict)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {r: set() for r in self.regions}
        for b in self.borders:
            x, y = b.regions
            adj[x].add(y)
            adj[y].add(x)
        return adj


def _region_ok(rm: RegionModel, r: int, lab: str) -> bool:
    bmap = {b.id: b for b in rm.borders}
    own = [b for b in rm.borders if r in b.regions]
    if lab == BLACK:
        return all(b.hairs_into == r for b in own)
    if lab == WHITE:
        return all(b.hairs_into != r for b in own)
    for seq, closed in rm.cycles.get(r, []):
        ins = [bmap[i].hairs_into == r for i in seq]
        pairs = zip(ins, ins[1:] + ins[:1]) if closed and len(ins) > 1 else zip(ins, ins[1:])
        if any(x == y for x, y in pairs):
            return False
    return True


def _pair_ok(x: str, y: str) -> bool:
    return {x, y} != {BLACK, WHITE} and not (x == NULL and y == NULL)


def check_alternating(rm: RegionModel, label: Mapping[int, str] | None = None) -> bool:
    """True iff the labeling satisfies all four alternating-coloring rules."""
    lab = dict(rm.label if label is None else label)
    if set(lab) != set(rm.regions) or any(v not in (BLACK, WHITE, NULL) for v in lab.values()):
        raise ValueError("malformed region model: every region needs a black/white/null label")
    for b in rm.borders:
        if b.hairs_into not in b.regions:
            raise ValueError(f"malformed region model: border {b.id} points into a foreign region")
        if not _pair_ok(lab[b.regions[0]], lab[b.regions[1]]):
            return False
    return all(_region_ok(rm, r, lab[r]) for r in rm.regions)


def solve_alternating(rm: RegionModel, limit: int = 2) -> list[dict[int, str]]:
    """Search for alternating labelings, stopping after ``limit`` solutions."""
    adj = rm.adjacency()
    order = list(rm.regions)
    allowed = {r: [c for c in (BLACK, WHITE, NULL) if _region_ok(rm, r, c)] for r in order}
    found: list[dict[int, str]] = []
    cur: dict[int, str] = {}

    def rec(i: int) -> None:
        if len(found) >= limit:
            return
        if i == len(order):
            found.append(dict(cur))
            return
        r = order[i]
        for c in allowed[r]:
            if all(_pair_ok(c, cur[s]) for s in adj[r] if s in cur):
                cur[r] = c
                rec(i + 1)
                del cur[r]

    rec(0)
    return found


def region_model(g: PlabicGraph) -> RegionModel:
    """Region model of the strand diagram of a graph with no same-colored edges.

    Regions ``0..`` are internal vertices (labeled by their colour); faces follow
    as null regions.  A border separates a vertex from the face in one of its
    corners and points away from white vertices and toward black ones.
    """
    verts = g.internal_vertices
    for e, (a, b) in g.edges.items():
        if g.colors[a] == g.colors[b] and g.colors[a] != BOUNDARY:
            raise GraphError(f"edge {e} joins two {g.colors[a]} vertices; contract it first")
    vid = {v: i for i, v in enumerate(verts)}
    off = len(verts)
    borders: list[Border] = []
    corner_border: dict[int, int] = {}
    for v in verts:
        for d in g.rotation[v]:
            # corner between d and its clockwise neighbour holds face_of_dart[d]
            f = g.face_of_dart[d]
            into = vid[v] if g.colors[v] == BLACK else off + f
            bid = len(borders)
            borders.append(Border(bid, (vid[v], off + f), into))
            corner_border[d] = bid
    cycles: dict[int, list[tuple[tuple[int, ...], bool]]] = {}
    for v in verts:
        cycles[vid[v]] = [(tuple(corner_border[d] for d in g.rotation[v]), True)]
    for f in g.faces:
        walk = list(f.walk)
        if not f.is_interior:
            # open path starting right after the boundary arc
            k = next(i for i, d in enumerate(walk) if g.colors[g.vertex_of(d)] == BOUNDARY)
            walk = walk[k:] + walk[:k]
        seq = tuple(corner_border[d] for d in walk if d in corner_border)
        cycles[off + f.id] = [(seq, f.is_interior)]
    label = {vid[v]: g.colors[v] for v in verts}
    label.update({off + f.id: NULL for f in g.faces})
    regions = list(range(off + len(g.faces)))
    return RegionModel(regions, borders, cycles, label)


# -- Stokes fronts -----------------------------------------------------------


def _cos_sign(x: Fraction) -> int:
    """Exact sign of cos(pi * x)."""
    r = x % 2
    if r in (Fraction(1, 2), Fraction(3, 2)):
        return 0
    return 1 if r < Fraction(1, 2) or r > Fraction(3, 2) else -1


@dataclass(frozen=True)
class StokesFront:
    theta: list[float]
    lower: list[float]
    upper: list[float]
    crossing_count: int


def stokes_front(n: int, epsilon: Fraction | float = Fraction(1, 2), samples: int | None = None) -> StokesFront:
    """Sample the real exponents of the two formal solutions on a circle of radius epsilon.

    The curves are -/+ 2/(n+2) * eps^(-(n+2)/2) * cos((n+2) theta / 2); crossings
    are sign changes of their difference on one turn, decided exactly.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    m = n + 2
    if samples is None:
        samples = 8 * m
    if samples < 8 * m:
        raise ValueError(f"need at least {8 * m} samples")
    eps = float(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    amp = 2.0 / m * eps ** (-m / 2)
    theta, lower, upper = [], [], []
    signs = []
    for k in range(samples):
        th = 2 * math.pi * k / samples
        c = math.cos(m * th / 2)
        theta.append(th)
        lower.append(-amp * c)
        upper.append(amp * c)
        signs.append(_cos_sign(Fraction(m * k, samples)))
    nonzero = [s for s in signs if s != 0]
    crossings = sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)
    return StokesFront(theta, lower, upper, crossings)


def strands_to_json(g: PlabicGraph, strands: Sequence[Strand]) -> dict:
    out = []
    for s in strands:
        out.append(
            {
                "waypoints": [[e, sgn] for e, sgn in s.edge_midpoint_sequence],
                "endpoints": list(s.endpoints) if s.endpoints else "closed",
            }
        )
    return {"n": g.n, "strands": out}


def strands_to_dot(g: PlabicGraph, strands: Sequence[Strand]) -> str:
    lines = ["digraph strands {"]
    for i, s in enumerate(strands):
        mids = [f"m{d >> 1}" for d in s.darts]
        if len(mids) > 1:
            lines.append(f'  {" -> ".join(mids)} [label="s{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def iter_crossings(strands: Sequence[Strand]) -> Iterator[tuple[int, int, int]]:
    """(edge, strand a, strand b) for each edge midpoint crossing."""
    owner: dict[int, list[int]] = {}
    for i, s in enumerate(strands):
        for d in s.darts:
            owner.setdefault(d >> 1, []).append(i)
    for e in sorted(owner):
        a, b = owner[e]
        yield e, a, b
