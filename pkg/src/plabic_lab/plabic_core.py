"""Bicolored graphs on a disk stored as combinatorial maps.

A dart is encoded as ``2 * edge_id + side``: side 0 sits at the first
endpoint of the edge, side 1 at the second.  The involution is ``d ^ 1``.
Rotations list darts counterclockwise.  Boundary vertices are degree-one
stubs, listed counterclockwise in ``boundary`` and labeled 1..n in that order.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

WHITE = "white"
BLACK = "black"
BOUNDARY = "boundary"
COLORS = (WHITE, BLACK, BOUNDARY)


class GraphError(ValueError):
    """Raised when an operation receives a graph it cannot handle."""


def edge_of(dart: int) -> int:
    return dart >> 1


def opposite(dart: int) -> int:
    return dart ^ 1


@dataclass(frozen=True, eq=False)
class PlabicGraph:
    colors: Mapping[int, str]
    edges: Mapping[int, tuple[int, int]]
    rotation: Mapping[int, tuple[int, ...]]
    boundary: tuple[int, ...]

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edge_rotations(
        cls,
        colors: Mapping[int, str],
        edges: Mapping[int, tuple[int, int]],
        rotations: Mapping[int, Sequence[int]],
        boundary: Sequence[int],
    ) -> PlabicGraph:
        """Build a graph from counterclockwise lists of edge ids.

        A self-loop appears twice in its vertex's list; the first occurrence
        is taken as side 0.
        """
        rot: dict[int, tuple[int, ...]] = {}
        for v, eids in rotations.items():
            seen: set[int] = set()
            darts = []
            for e in eids:
                a, b = edges[e]
                if a == b:
                    side = 1 if e in seen else 0
                    seen.add(e)
                elif a == v:
                    side = 0
                elif b == v:
                    side = 1
                else:
                    raise GraphError(f"edge {e} is not incident to vertex {v}")
                darts.append(2 * e + side)
            rot[v] = tuple(darts)
        return cls(dict(colors), {e: tuple(ab) for e, ab in edges.items()}, rot, tuple(boundary))

    # -- basic accessors ----------------------------------------------------

    @property
    def darts(self) -> list[int]:
        return [2 * e + s for e in sorted(self.edges) for s in (0, 1)]

    def vertex_of(self, dart: int) -> int:
        return self.edges[dart >> 1][dart & 1]

    def head(self, dart: int) -> int:
        """Vertex reached by traversing ``dart`` away from its own vertex."""
        return self.edges[dart >> 1][1 - (dart & 1)]

    @property
    def internal_vertices(self) -> list[int]:
        return sorted(v for v, c in self.colors.items() if c != BOUNDARY)

    @property
    def n(self) -> int:
        return len(self.boundary)

    def degree(self, v: int) -> int:
        return len(self.rotation.get(v, ()))

    def label_of(self, v: int) -> int:
        """1-based boundary label of a boundary vertex."""
        return self._boundary_index[v] + 1

    def stub_dart(self, label: int) -> int:
        """Dart sitting at boundary vertex ``label`` (1-based)."""
        return self.rotation[self.boundary[label - 1]][0]

    @cached_property
    def _position(self) -> dict[int, tuple[int, int]]:
        pos = {}
        for v, darts in self.rotation.items():
            for i, d in enumerate(darts):
                pos[d] = (v, i)
        return pos

    @cached_property
    def _boundary_index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.boundary)}

    def succ(self, dart: int) -> int:
        """Counterclockwise rotation successor."""
        v, i = self._position[dart]
        rot = self.rotation[v]
        return rot[(i + 1) % len(rot)]

    def pred(self, dart: int) -> int:
        """Clockwise rotation neighbor."""
        v, i = self._position[dart]
        rot = self.rotation[v]
        return rot[(i - 1) % len(rot)]

    def face_next(self, dart: int) -> int:
        # Walk with the face on the left; at a boundary stub hop
        # counterclockwise along the boundary arc to the next stub.
        v = self.head(dart)
        if self.colors[v] == BOUNDARY:
            i = self._boundary_index[v]
            return self.rotation[self.boundary[(i + 1) % len(self.boundary)]][0]
        return self.pred(opposite(dart))

    # -- derived structure --------------------------------------------------

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(_compute_faces(self))

    @cached_property
    def face_of_dart(self) -> dict[int, int]:
        """Face id lying to the left of each dart."""
        out = {}
        for f in self.faces:
            for d in f.walk:
                out[d] = f.id
        return out

    @property
    def interior_faces(self) -> list[Face]:
        return [f for f in self.faces if f.is_interior]

    def boundary_face(self, label: int) -> int:
        """Id of the boundary face between labels ``label`` and ``label + 1``."""
        nxt = self.boundary[label % self.n]
        return self.face_of_dart[self.rotation[nxt][0]]

    def face_vertices(self, face_id: int) -> list[int]:
        return [self.vertex_of(d) for d in self.faces[face_id].walk]

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        rotations = {}
        for v in sorted(self.rotation):
            rotations[str(v)] = [d >> 1 for d in self.rotation[v]]
        return {
            "vertices": [{"id": v, "color": self.colors[v]} for v in sorted(self.colors)],
            "edges": [[a, b, e] for e, (a, b) in sorted(self.edges.items())],
            "rotations": rotations,
            "boundary": list(self.boundary),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> PlabicGraph:
        try:
            colors = {int(v["id"]): str(v["color"]) for v in data["vertices"]}
            edges = {int(e): (int(a), int(b)) for a, b, e in data["edges"]}
            rotations = {int(v): [int(e) for e in es] for v, es in data["rotations"].items()}
            boundary = [int(v) for v in data["boundary"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        return cls.from_edge_rotations(colors, edges, rotations, boundary)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class Face:
    id: int
    walk: tuple[int, ...]
    is_interior: bool


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrow_count: tuple[tuple[int, ...], ...]

    def b(self, i: int, j: int) -> int:
        idx = {f: k for k, f in enumerate(self.vertices)}
        return self.arrow_count[idx[i]][idx[j]]


@dataclass
class Report:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _compute_faces(g: PlabicGraph) -> list[Face]:
    seen: set[int] = set()
    walks = []
    for d in g.darts:
        if d in seen:
            continue
        walk = []
        x = d
        while x not in seen:
            seen.add(x)
            walk.append(x)
            x = g.face_next(x)
        walks.append(tuple(walk))
    faces = []
    for i, w in enumerate(walks):
        interior = all(g.colors[g.vertex_of(d)] != BOUNDARY for d in w)
        faces.append(Face(i, w, interior))
    return faces


def _components(g: PlabicGraph, merge_boundary: bool = False) -> int:
    root = {v: -1 for v in g.boundary} if merge_boundary else {}
    adj: dict[int, set[int]] = {root.get(v, v): set() for v in g.colors}
    for a, b in g.edges.values():
        a, b = root.get(a, a), root.get(b, b)
        adj[a].add(b)
        adj[b].add(a)
    seen: set[int] = set()
    count = 0
    for v in adj:
        if v in seen:
            continue
        count += 1
        queue = deque([v])
        seen.add(v)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return count


def validate_graph(g: PlabicGraph) -> Report:
    """Check the structural invariants; each violation names its culprit."""
    rep = Report()
    v_ = rep.violations
    for v, c in g.colors.items():
        if c not in COLORS:
            v_.append(f"bad color {c!r} at vertex {v}")
    for e, (a, b) in g.edges.items():
        for x in (a, b):
            if x not in g.colors:
                v_.append(f"edge {e} references unknown vertex {x}")
    if v_:
        return rep
    all_darts = set(g.darts)
    owner: dict[int, int] = {}
    for v, darts in g.rotation.items():
        if v not in g.colors:
            v_.append(f"rotation given for unknown vertex {v}")
            continue
        for d in darts:
            if d not in all_darts:
                v_.append(f"unknown dart {d} in rotation of vertex {v}")
            elif d in owner:
                v_.append(f"dart multiply owned: dart {d} at vertices {owner[d]} and {v}")
            else:
                owner[d] = v
    for d in sorted(all_darts - owner.keys()):
        v_.append(f"dart {d} missing from every rotation")
    for d, v in owner.items():
        if g.vertex_of(d) != v:
            v_.append(f"dart {d} listed at vertex {v} but its edge attaches it to {g.vertex_of(d)}")
    bset = [v for v, c in g.colors.items() if c == BOUNDARY]
    if sorted(bset) != sorted(g.boundary) or len(set(g.boundary)) != len(g.boundary):
        v_.append("boundary order does not list each boundary vertex exactly once")
    for v in bset:
        if len(g.rotation.get(v, ())) != 1:
            v_.append(f"boundary vertex {v} is not a degree-one stub")
    if not g.boundary:
        v_.append("graph has no boundary stubs")
    if v_:
        return rep
    if _components(g, merge_boundary=True) != 1:
        v_.append("graph is not connected (some component misses the boundary)")
        return rep
    # Merge the boundary into one root vertex; a disk graph is then planar.
    n_int = len(g.colors) - len(bset)
    chi = (n_int + 1) - len(g.edges) + len(g.faces)
    if chi != 2:
        v_.append(f"not of disk type (Euler characteristic of the capped map is {chi}, expected 2)")
    return rep


def faces(g: PlabicGraph) -> list[Face]:
    rep = validate_graph(g)
    if not rep.ok:
        raise GraphError("; ".join(rep.violations))
    return list(g.faces)


def _arrow_matrix(g: PlabicGraph, face_ids: Sequence[int]) -> list[list[int]]:
    idx = {f: i for i, f in enumerate(face_ids)}
    m = len(face_ids)
    b = [[0] * m for _ in range(m)]
    fod = g.face_of_dart
    for e, (x, y) in g.edges.items():
        cx, cy = g.colors[x], g.colors[y]
        # boundary vertices count as white here
        if cy == BLACK and cx in (WHITE, BOUNDARY):
            d = 2 * e
        elif cx == BLACK and cy in (WHITE, BOUNDARY):
            d = 2 * e + 1
        else:
            continue
        # d runs white -> black; its left face sees the white end on the right
        src, dst = fod[d], fod[d ^ 1]
        if src == dst or src not in idx or dst not in idx:
            continue
        b[idx[src]][idx[dst]] += 1
        b[idx[dst]][idx[src]] -= 1
    return b


def dual_quiver(g: PlabicGraph, include_boundary: bool = False) -> Quiver:
    """Quiver with an arrow across every white-black edge, white end on its right.

    Only interior faces are vertices unless ``include_boundary`` is set.
    Opposite arrows cancel, so the result is the signed count.
    """
    fs = faces(g)
    ids = tuple(f.id for f in fs if include_boundary or f.is_interior)
    b = _arrow_matrix(g, ids)
    return Quiver(ids, tuple(tuple(r) for r in b))


def faces_to_dot(g: PlabicGraph) -> str:
    lines = ["graph faces {"]
    for v in sorted(g.colors):
        lines.append(f'  v{v} [label="{v}", color="{g.colors[v]}"];')
    for e, (a, b) in sorted(g.edges.items()):
        lf, rf = g.face_of_dart[2 * e], g.face_of_dart[2 * e + 1]
        lines.append(f'  v{a} -- v{b} [label="e{e} F{lf}|F{rf}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_to_dot(q: Quiver) -> str:
    lines = ["digraph quiver {"]
    for f in q.vertices:
        lines.append(f"  F{f};")
    for i, fi in enumerate(q.vertices):
        for j, fj in enumerate(q.vertices):
            for _ in range(max(q.arrow_count[i][j], 0)):
                lines.append(f"  F{fi} -> F{fj};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def relabel_darts(g: PlabicGraph, perm: Mapping[int, int]) -> PlabicGraph:
    """Rename edge ids by ``perm`` (old edge id -> new edge id)."""
    edges = {perm[e]: ab for e, ab in g.edges.items()}
    rot = {v: tuple(2 * perm[d >> 1] + (d & 1) for d in ds) for v, ds in g.rotation.items()}
    return PlabicGraph(dict(g.colors), edges, rot, g.boundary)


def star_graph(color: str, n: int) -> PlabicGraph:
    """One internal vertex of the given color joined to ``n`` boundary stubs."""
    colors = {0: color}
    edges = {}
    for i in range(1, n + 1):
        colors[i] = BOUNDARY
        edges[i - 1] = (i, 0)
    rot = {0: list(range(n))}
    rot.update({i: [i - 1] for i in range(1, n + 1)})
    return PlabicGraph.from_edge_rotations(colors, edges, rot, list(range(1, n + 1)))


def iter_edges_of_face(g: PlabicGraph, face_id: int) -> Iterable[int]:
    return (d >> 1 for d in g.faces[face_id].walk)
