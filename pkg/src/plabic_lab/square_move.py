"""Square moves, graph normalization, canonical forms and the coordinate
change across a square face together with its 2x4 matrix oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .plabic_core import BLACK, BOUNDARY, WHITE, GraphError, PlabicGraph, Quiver

STANDARD = "standard"
POSITIVE = "positive"


class DomainError(ValueError):
    """A value falls outside the domain of a birational map."""


# -- mutable editing helpers --------------------------------------------------


class _Editor:
    def __init__(self, g: PlabicGraph) -> None:
        self.colors = dict(g.colors)
        self.edges = {e: tuple(ab) for e, ab in g.edges.items()}
        self.rot = {v: list(ds) for v, ds in g.rotation.items()}
        self.boundary = tuple(g.boundary)
        self.next_edge = max(self.edges, default=-1) + 1
        self.next_vertex = max(self.colors, default=-1) + 1

    def graph(self) -> PlabicGraph:
        return PlabicGraph(
            dict(self.colors),
            dict(self.edges),
            {v: tuple(ds) for v, ds in self.rot.items()},
            self.boundary,
        )

    def vertex_of(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def _set_end(self, d: int, v: int) -> None:
        e = d >> 1
        ab = list(self.edges[e])
        ab[d & 1] = v
        self.edges[e] = tuple(ab)

    def _replace(self, v: int, old: int, new: int) -> None:
        r = self.rot[v]
        r[r.index(old)] = new

    def remove_bivalent(self, v: int) -> bool:
        d1, d2 = self.rot[v]
        if d1 >> 1 == d2 >> 1:
            return False
        x1, x2 = self.vertex_of(d1 ^ 1), self.vertex_of(d2 ^ 1)
        e = d1 >> 1
        o1, o2 = d1 ^ 1, d2 ^ 1
        self.edges[e] = (x1, x2)
        self._replace(x1, o1, 2 * e)
        self._replace(x2, o2, 2 * e + 1)
        del self.edges[d2 >> 1]
        del self.rot[v]
        del self.colors[v]
        return True

    def contract(self, e: int) -> None:
        u, v = self.edges[e]
        du, dv = 2 * e, 2 * e + 1
        ru, rv = self.rot[u], self.rot[v]
        i, j = ru.index(du), rv.index(dv)
        tail = rv[j + 1:] + rv[:j]
        self.rot[u] = ru[:i] + tail + ru[i + 1:]
        for d in tail:
            self._set_end(d, u)
        del self.edges[e]
        del self.rot[v]
        del self.colors[v]

    def split_corner(self, v: int, keep: Sequence[int]) -> int:
        """Move every dart of v except the consecutive pair ``keep`` to a new
        vertex of the same colour joined to v; returns the new vertex."""
        a, b = keep  # b follows a counterclockwise
        r = self.rot[v]
        i = r.index(b)
        others = r[i + 1:] + r[:i]
        others.remove(a)
        w = self.next_vertex
        self.next_vertex += 1
        e = self.next_edge
        self.next_edge += 1
        self.colors[w] = self.colors[v]
        self.edges[e] = (v, w)
        self.rot[v] = [a, b, 2 * e]
        self.rot[w] = others + [2 * e + 1]
        for d in others:
            self._set_end(d, w)
        return w

    def normalize(self) -> None:
        changed = True
        while changed:
            changed = False
            for v in sorted(self.rot):
                if v in self.rot and self.colors[v] != BOUNDARY and len(self.rot[v]) == 2:
                    if self.remove_bivalent(v):
                        changed = True
            for e in sorted(self.edges):
                if e not in self.edges:
                    continue
                a, b = self.edges[e]
                if a == b or self.colors[a] == BOUNDARY or self.colors[a] != self.colors[b]:
                    continue
                parallel = sum(1 for x, y in self.edges.values() if {x, y} == {a, b})
                if parallel == 1:
                    self.contract(e)
                    changed = True


def normalize(g: PlabicGraph) -> PlabicGraph:
    """Remove bivalent internal vertices and contract same-coloured edges.

    Neither step changes the strand diagram's boundary behaviour.  An edge is
    only contracted when it is the unique edge between its endpoints.
    """
    ed = _Editor(g)
    ed.normalize()
    return ed.graph()


def canonical_form(g: PlabicGraph) -> tuple:
    """Invariant of boundary-label-preserving isomorphism.

    Traverses from stub 1, numbering vertices in discovery order and recording
    each vertex's rotation relative to the dart it was entered by.
    """
    index: dict[int, int] = {}
    entry: dict[int, int] = {}
    order: list[int] = []
    for label in range(1, g.n + 1):
        root = g.boundary[label - 1]
        if root in index:
            continue
        index[root] = len(order)
        entry[root] = g.rotation[root][0]
        order.append(root)
        k = len(order) - 1
        while k < len(order):
            v = order[k]
            k += 1
            r = g.rotation[v]
            s = r.index(entry[v])
            for d in r[s:] + r[:s]:
                w = g.head(d)
                if w not in index:
                    index[w] = len(order)
                    entry[w] = d ^ 1
                    order.append(w)
    code = []
    for v in order:
        r = g.rotation[v]
        s = r.index(entry[v])
        darts = r[s:] + r[:s]
        nb = []
        for d in darts:
            w = g.head(d)
            rw = g.rotation[w]
            sw = rw.index(entry[w])
            nb.append((index[w], (rw.index(d ^ 1) - sw) % len(rw)))
        tag = ("b", g.label_of(v)) if g.colors[v] == BOUNDARY else (g.colors[v],)
        code.append((tag, tuple(nb)))
    return tuple(code)


# -- the move itself -----------------------------------------------------------


def square_face_vertices(g: PlabicGraph, face: int) -> list[int]:
    """Vertices of a square face, or raise if the face is not a square."""
    f = g.faces[face]
    if not f.is_interior or len(f.walk) != 4:
        raise GraphError(f"face {face} is not an interior quadrilateral")
    verts = [g.vertex_of(d) for d in f.walk]
    cols = [g.colors[v] for v in verts]
    if len(set(verts)) != 4 or any(c == BOUNDARY for c in cols):
        raise GraphError(f"face {face} does not visit four distinct internal vertices")
    if any(cols[i] == cols[(i + 1) % 4] for i in range(4)):
        raise GraphError(f"face {face} is not alternately coloured")
    return verts


def square_move(g: PlabicGraph, face: int) -> PlabicGraph:
    """Swap the colours around a square face whose vertices are all trivalent."""
    verts = square_face_vertices(g, face)
    for v in verts:
        if g.degree(v) != 3:
            raise GraphError(f"vertex {v} on face {face} is not trivalent")
    colors = dict(g.colors)
    for v in verts:
        colors[v] = WHITE if colors[v] == BLACK else BLACK
    return PlabicGraph(colors, dict(g.edges), dict(g.rotation), g.boundary)


def general_square_move(g: PlabicGraph, face: int) -> tuple[PlabicGraph, int]:
    """Square move at a face whose vertices may have higher degree.

    High-degree corners are first split off so the face vertices are trivalent;
    after the colour swap the graph is normalized.  Returns the new graph and
    the id of the moved face in it.
    """
    square_face_vertices(g, face)
    walk = g.faces[face].walk
    ed = _Editor(g)
    for i, d in enumerate(walk):
        v = g.vertex_of(d)
        arrive = walk[i - 1] ^ 1
        if len(ed.rot[v]) > 3:
            ed.split_corner(v, (d, arrive))
    for d in walk:
        v = ed.vertex_of(d)
        ed.colors[v] = WHITE if ed.colors[v] == BLACK else BLACK
    ed.normalize()
    h = ed.graph()
    return h, h.face_of_dart[walk[0]]


def square_faces(g: PlabicGraph) -> list[int]:
    out = []
    for f in g.faces:
        try:
            square_face_vertices(g, f.id)
        except GraphError:
            continue
        out.append(f.id)
    return out


# -- coordinates --------------------------------------------------------------


@dataclass(frozen=True)
class FaceCoordinates:
    values: Mapping[int, Fraction]
    convention: str = STANDARD

    def __post_init__(self) -> None:
        if self.convention not in (STANDARD, POSITIVE):
            raise ValueError(f"unknown convention {self.convention!r}")
        for f, x in self.values.items():
            if x == 0:
                raise ValueError(f"face {f} has coordinate 0")

    def negated(self) -> FaceCoordinates:
        other = POSITIVE if self.convention == STANDARD else STANDARD
        return FaceCoordinates({f: -x for f, x in self.values.items()}, other)

    def to_positive(self) -> FaceCoordinates:
        return self if self.convention == POSITIVE else self.negated()

    def to_standard(self) -> FaceCoordinates:
        return self if self.convention == STANDARD else self.negated()


LOCAL_EXPONENTS = {"NE": 1, "ES": -1, "SW": 1, "WN": -1}


def mutate_values(values: Mapping[int, Fraction], k: int, exponents: Mapping[int, int]) -> dict[int, Fraction]:
    """Cluster X-transformation at ``k``; ``exponents[j]`` is the arrow count k -> j."""
    xk = Fraction(values[k])
    if xk == -1:
        raise DomainError(f"coordinate at face {k} equals -1")
    out = {f: Fraction(x) for f, x in values.items()}
    out[k] = 1 / xk
    for j, b in exponents.items():
        if j == k or b == 0:
            continue
        out[j] = out[j] * xk ** max(-b, 0) * (1 + xk) ** b
    return out


def transport_coords(
    fc: FaceCoordinates,
    face: int,
    neighbors: Mapping[str, int] | None = None,
    quiver: Quiver | None = None,
) -> FaceCoordinates:
    """Positive coordinates after a square move at ``face``.

    Either label the neighbouring faces NE/ES/SW/WN, or pass a quiver whose
    row at ``face`` supplies the exponents; coinciding neighbours multiply.
    """
    if fc.convention != POSITIVE:
        raise ValueError("transport_coords expects positive face coordinates")
    exps: dict[int, int] = {}
    if neighbors is not None:
        for pos, f in neighbors.items():
            exps[f] = exps.get(f, 0) + LOCAL_EXPONENTS[pos]
    elif quiver is not None:
        i = quiver.vertices.index(face)
        for j, f in enumerate(quiver.vertices):
            exps[f] = quiver.arrow_count[i][j]
    else:
        raise ValueError("need neighbors or a quiver")
    return FaceCoordinates(mutate_values(fc.values, face, exps), POSITIVE)


# -- the 2x4 matrix oracle -----------------------------------------------------


@dataclass(frozen=True)
class MatrixModel:
    columns: Mapping[str, tuple[Fraction, Fraction]]

    def minor(self, a: str, b: str) -> Fraction:
        (p, q), (r, s) = self.columns[a], self.columns[b]
        return Fraction(p) * s - Fraction(q) * r


@dataclass(frozen=True)
class OracleCoords:
    X: dict[str, Fraction]
    Y: dict[str, Fraction]
    plucker_ok: bool


def matrix_oracle_coords(m: MatrixModel) -> OracleCoords:
    """Face coordinates on both sides of the move read off from 2x2 minors."""
    D = m.minor
    for a, b in (("S", "N"), ("S", "E"), ("N", "E"), ("N", "W"), ("S", "W"), ("W", "E")):
        if D(a, b) == 0:
            raise DomainError(f"minor {a}{b} vanishes")
    X = {
        "NE": D("S", "N") / D("S", "E"),
        "ES": D("N", "E") / D("N", "S"),
        "SW": D("N", "S") / D("N", "W"),
        "WN": D("S", "W") / D("S", "N"),
    }
    Y = {
        "NE": D("W", "N") / D("W", "E"),
        "ES": D("W", "E") / D("W", "S"),
        "SW": D("E", "S") / D("E", "W"),
        "WN": D("E", "W") / D("E", "N"),
    }
    for c in (X, Y):
        c["M"] = -1 / (c["NE"] * c["ES"] * c["SW"] * c["WN"])
    ok = D("S", "N") * D("E", "W") == D("S", "E") * D("N", "W") + D("S", "W") * D("E", "N")
    return OracleCoords(X, Y, ok)


def transport_local(Y: Mapping[str, Fraction]) -> dict[str, Fraction]:
    """The five-value square move formula on a labeled local chart."""
    ym = Fraction(Y["M"])
    if ym == -1:
        raise DomainError("Y_M = -1: the image is not alternating")
    return {
        "NE": Y["NE"] * (1 + ym),
        "ES": Y["ES"] / (1 + 1 / ym),
        "SW": Y["SW"] * (1 + ym),
        "WN": Y["WN"] / (1 + 1 / ym),
        "M": 1 / ym,
    }
