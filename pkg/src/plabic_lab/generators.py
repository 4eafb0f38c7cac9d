"""Standard graphs: stars, the Gr(2,5) example, wiring and double-word
graphs, triangle graphs, polygon triangulations and top-cell grids."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .plabic_core import BLACK, BOUNDARY, WHITE, GraphError, PlabicGraph, star_graph

Point = tuple[float, float]


def graph_from_embedding(
    pos: Mapping[int, Point],
    colors: Mapping[int, str],
    edges: Sequence[tuple[int, int]],
    boundary: Sequence[int],
) -> PlabicGraph:
    """Build a map from a straight-line drawing.

    Rotations come from edge angles, so the drawing must be planar.  Edge ids
    follow the order of ``edges``.
    """
    inc: dict[int, list[tuple[float, int]]] = {v: [] for v in colors}
    emap = {}
    for e, (a, b) in enumerate(edges):
        emap[e] = (a, b)
        (xa, ya), (xb, yb) = pos[a], pos[b]
        inc[a].append((math.atan2(yb - ya, xb - xa), e))
        inc[b].append((math.atan2(ya - yb, xa - xb), e))
    rot = {v: [e for _, e in sorted(lst)] for v, lst in inc.items()}
    return PlabicGraph.from_edge_rotations(colors, emap, rot, boundary)


def gr23_graph() -> PlabicGraph:
    """Black trivalent vertex with three boundary stubs."""
    return star_graph(BLACK, 3)


def gr25_example_graph() -> PlabicGraph:
    """The eight-vertex reduced graph for the top cell of Gr(2,5)."""
    def polar(deg: float, r: float) -> Point:
        return (r * math.cos(math.radians(deg)), r * math.sin(math.radians(deg)))

    white_angles = {0: 90, 1: 162, 2: 18, 3: 234, 4: 306}
    pos: dict[int, Point] = {}
    colors: dict[int, str] = {}
    for i, a in white_angles.items():
        pos[i] = polar(a, 1.0)
        colors[i] = WHITE
        pos[10 + i] = polar(a, 1.5)
        colors[10 + i] = BOUNDARY
    for j, (a, r) in enumerate([(-90, 0.5), (162, 0.55), (18, 0.55)]):
        pos[5 + j] = polar(a, r)
        colors[5 + j] = BLACK
    l0, l1, l2 = 5, 6, 7
    edges = [(0, l1), (l1, 3), (3, l0), (l0, 4), (4, l2), (l2, 0), (1, l1), (2, l2), (0, l0)]
    edges += [(10 + i, i) for i in range(5)]
    # counterclockwise from angle 18
    boundary = [12, 10, 11, 13, 14]
    return graph_from_embedding(pos, colors, edges, boundary)


def square_graph() -> PlabicGraph:
    """Four-cycle of alternating trivalent vertices, one stub each."""
    pos = {0: (0.5, 0.0), 1: (0.0, 0.5), 2: (-0.5, 0.0), 3: (0.0, -0.5)}
    colors = {0: WHITE, 1: BLACK, 2: WHITE, 3: BLACK}
    for i in range(4):
        x, y = pos[i]
        pos[4 + i] = (2 * x, 2 * y)
        colors[4 + i] = BOUNDARY
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)] + [(4 + i, i) for i in range(4)]
    return graph_from_embedding(pos, colors, edges, [4, 5, 6, 7])


# -- wiring and double-word graphs -------------------------------------------


def _line_graph(
    n: int,
    width: float,
    attachments: Sequence[tuple[float, int, int, str, str]],
    axis_whites: bool = False,
) -> tuple[PlabicGraph, list[int], list[int]]:
    """Horizontal lines y=1..n from x=0 to x=width with vertical rungs.

    Each attachment is (x, lower line, upper line, lower color, upper color).
    Returns the graph and the left/right boundary vertex ids per line.
    """
    pos: dict[int, Point] = {}
    colors: dict[int, str] = {}
    nodes: dict[int, list[tuple[float, int]]] = {i: [] for i in range(1, n + 1)}
    edges: list[tuple[int, int]] = []
    nxt = 0

    def new(p: Point, c: str) -> int:
        nonlocal nxt
        pos[nxt] = p
        colors[nxt] = c
        nxt += 1
        return nxt - 1

    left = [new((0.0, float(i)), BOUNDARY) for i in range(1, n + 1)]
    right = [new((width, float(i)), BOUNDARY) for i in range(1, n + 1)]
    if axis_whites:
        for i in range(1, n + 1):
            nodes[i].append((0.5, new((0.5, float(i)), WHITE)))
    for x, lo, hi, clo, chi in attachments:
        a = new((x, float(lo)), clo)
        b = new((x, float(hi)), chi)
        nodes[lo].append((x, a))
        nodes[hi].append((x, b))
        edges.append((a, b))
    for i in range(1, n + 1):
        chain = [left[i - 1]] + [v for _, v in sorted(nodes[i])] + [right[i - 1]]
        edges.extend(zip(chain, chain[1:]))
    # counterclockwise: right side bottom to top, then left side top to bottom
    boundary = right + left[::-1]
    return graph_from_embedding(pos, colors, edges, boundary), left, right


def wiring_graph(n: int, word: Sequence[int]) -> PlabicGraph:
    """Horizontal wires with a black-over-white rung for each letter s_i."""
    for i in word:
        if not 1 <= i < n:
            raise GraphError(f"letter s_{i} out of range for {n} strands")
    att = [(float(j), i, i + 1, WHITE, BLACK) for j, i in enumerate(word, start=1)]
    g, _, _ = _line_graph(n, float(len(word) + 1), att)
    return g


@dataclass(frozen=True)
class DiskCut:
    """An annular graph cut open along a ray; ``pairs`` matches the stub
    labels on the two sides of the cut."""

    graph: PlabicGraph
    pairs: tuple[tuple[int, int], ...]


def double_word_graph(n: int, double_word: Sequence[tuple[int, str]]) -> DiskCut:
    """Concentric circles with radial rungs, cut open to a disk.

    ``double_word`` holds (letter, tau) with tau in {"0", "inf"}.  The circles
    become horizontal lines at heights 1..n (height = radius), the phase becomes
    the x coordinate, and the cut runs just before phase 2*pi.
    """
    k = len(double_word)
    att = []
    for j, (i, tau) in enumerate(double_word, start=1):
        if not 1 <= i < n:
            raise GraphError(f"letter s_{i} out of range for {n} circles")
        x = 1.0 + j
        if str(tau) == "0":
            att.append((x, i, i + 1, BLACK, WHITE))
        elif str(tau) in ("inf", "oo", "∞"):
            att.append((x, n - i, n + 1 - i, WHITE, BLACK))
        else:
            raise GraphError(f"tau must be 0 or inf, got {tau!r}")
    g, left, right = _line_graph(n, float(k + 2), att, axis_whites=True)
    pairs = tuple((g.label_of(a), g.label_of(b)) for a, b in zip(left, right))
    return DiskCut(g, pairs)


# -- triangle graphs and polygons ---------------------------------------------


def _tri_layout(n: int, corners: Sequence[Point]) -> tuple[dict, dict, list, list]:
    """Centers of the n^2 small triangles and side midpoints of a big triangle."""
    A, B, C = corners

    def at(i: float, j: float, l: float) -> Point:
        return ((i * A[0] + j * B[0] + l * C[0]) / n, (i * A[1] + j * B[1] + l * C[1]) / n)

    ups = {}
    downs = {}
    for i in range(n):
        for j in range(n - i):
            l = n - 1 - i - j
            pts = [at(i + 1, j, l), at(i, j + 1, l), at(i, j, l + 1)]
            ups[(i, j, l)] = (sum(p[0] for p in pts) / 3, sum(p[1] for p in pts) / 3)
    for i in range(n - 1):
        for j in range(n - 1 - i):
            l = n - 2 - i - j
            pts = [at(i + 1, j + 1, l), at(i + 1, j, l + 1), at(i, j + 1, l + 1)]
            downs[(i, j, l)] = (sum(p[0] for p in pts) / 3, sum(p[1] for p in pts) / 3)
    edges = []
    for (i, j, l) in downs:
        for u in [(i + 1, j, l), (i, j + 1, l), (i, j, l + 1)]:
            edges.append((("d", (i, j, l)), ("u", u)))
    sides = []
    for (i, j, l) in ups:
        # an up triangle touches side opposite corner X when that coordinate is 0
        if i == 0:
            sides.append((("u", (i, j, l)), at(0, j + 0.5, l + 0.5), "BC"))
        if j == 0:
            sides.append((("u", (i, j, l)), at(i + 0.5, 0, l + 0.5), "CA"))
        if l == 0:
            sides.append((("u", (i, j, l)), at(i + 0.5, j + 0.5, 0), "AB"))
    return ups, downs, edges, sides


def triangle_graph(n: int) -> PlabicGraph:
    """The graph dual to the n^2-triangle subdivision, side vertices as stubs.

    For n = 1 the single center is black, giving the Gr(2,3) star.
    """
    if n < 1:
        raise GraphError("n must be at least 1")
    if n == 1:
        return gr23_graph()
    corners = [(math.cos(math.radians(a)), math.sin(math.radians(a))) for a in (90, 210, 330)]
    return _assemble(n, [corners])


def _assemble(n: int, tris: Sequence[Sequence[Point]]) -> PlabicGraph:
    pos: dict[int, Point] = {}
    colors: dict[int, str] = {}
    ids: dict[tuple, int] = {}
    edges: list[tuple[int, int]] = []
    side_at: dict[tuple[int, int], int] = {}
    side_count: dict[int, int] = {}

    def vid(key: tuple, p: Point, c: str) -> int:
        if key not in ids:
            ids[key] = len(ids)
            pos[ids[key]] = p
            colors[ids[key]] = c
        return ids[key]

    for t, corners in enumerate(tris):
        ups, downs, tedges, sides = _tri_layout(n, corners)
        for (kind, key), (_, ukey) in tedges:
            a = vid((t, "d", key), downs[key], BLACK)
            b = vid((t, "u", ukey), ups[ukey], WHITE)
            edges.append((a, b))
        for (_, ukey), p, _side in sides:
            u = vid((t, "u", ukey), ups[ukey], WHITE)
            rk = (round(p[0] * 1e6), round(p[1] * 1e6))
            if rk not in side_at:
                side_at[rk] = vid(("side", rk), p, BOUNDARY)
            s = side_at[rk]
            side_count[s] = side_count.get(s, 0) + 1
            edges.append((s, u))
    for s, cnt in side_count.items():
        if cnt > 1:
            colors[s] = WHITE  # shared by two triangles: interior white vertex
    bverts = [v for v, c in colors.items() if c == BOUNDARY]
    cx = sum(pos[v][0] for v in bverts) / len(bverts)
    cy = sum(pos[v][1] for v in bverts) / len(bverts)
    # Stubs end on side midpoints; push them outward so rotations stay planar.
    boundary = sorted(bverts, key=lambda v: math.atan2(pos[v][1] - cy, pos[v][0] - cx) % (2 * math.pi))
    return graph_from_embedding(pos, colors, edges, boundary)


def fan_triangulation(N: int) -> list[tuple[int, int, int]]:
    return [(1, i, i + 1) for i in range(2, N)]


def validate_triangulation(N: int, triangles: Sequence[Sequence[int]]) -> list[tuple[int, int, int]]:
    """Check an N-gon triangulation and return its triangles in ccw vertex order."""
    if N < 3 or len(triangles) != N - 2:
        raise GraphError(f"a triangulation of a {N}-gon has {N - 2} triangles")
    tris = []
    edge_use: dict[tuple[int, int], int] = {}
    for t in triangles:
        if len(set(t)) != 3 or not all(1 <= v <= N for v in t):
            raise GraphError(f"bad triangle {tuple(t)}")
        a, b, c = sorted(t)
        tris.append((a, b, c))
        for e in ((a, b), (b, c), (a, c)):
            edge_use[e] = edge_use.get(e, 0) + 1
    sides = {(i, i + 1) for i in range(1, N)} | {(1, N)}
    for e, cnt in edge_use.items():
        want = 1 if e in sides else 2
        if cnt != want:
            raise GraphError(f"edge {e} used {cnt} times")
    diags = [e for e in edge_use if e not in sides]
    for (a, b) in diags:
        for (c, d) in diags:
            if a < c < b < d:
                raise GraphError(f"diagonals {(a, b)} and {(c, d)} cross")
    return tris


def polygon_assembly(n: int, N: int, triangles: Sequence[Sequence[int]]) -> PlabicGraph:
    """Graph of a triangulated N-gon.

    For n = 1 this is the Gr(2,N) graph: a black vertex per triangle joined to
    a white vertex at each of its corners, and one stub per polygon vertex, so
    interior faces are the diagonals.  Boundary label i sits at polygon vertex
    i + 1, which makes the face of diagonal (a, b) carry the label {a, b} and
    the face of side (v, v + 1) the label {v, v + 1}.  For n >= 2 copies of the triangle graph
    are glued along shared sides.
    """
    tris = validate_triangulation(N, triangles)
    corner = {
        v: (math.cos(2 * math.pi * (v - 1) / N - math.pi / 2), math.sin(2 * math.pi * (v - 1) / N - math.pi / 2))
        for v in range(1, N + 1)
    }
    if n >= 2:
        return _assemble(n, [[corner[a], corner[b], corner[c]] for a, b, c in tris])
    if n != 1:
        raise GraphError("n must be at least 1")
    pos: dict[int, Point] = {}
    colors: dict[int, str] = {}
    edges = []
    for v in range(1, N + 1):
        pos[v] = corner[v]
        colors[v] = WHITE
        pos[N + v] = (2 * corner[v][0], 2 * corner[v][1])
        colors[N + v] = BOUNDARY
        edges.append((N + v, v))
    for t, (a, b, c) in enumerate(tris):
        b_id = 2 * N + 1 + t
        pos[b_id] = tuple(sum(corner[x][i] for x in (a, b, c)) / 3 for i in (0, 1))  # type: ignore[assignment]
        colors[b_id] = BLACK
        edges += [(b_id, a), (b_id, b), (b_id, c)]
    return graph_from_embedding(pos, colors, edges, [N + v % N + 1 for v in range(1, N + 1)])


# -- top cell grids -----------------------------------------------------------


def grid_graph(k: int, n: int, palette: tuple[str, str, str, str] = (WHITE, BLACK, BLACK, WHITE)) -> PlabicGraph:
    """Reduced graph for the top cell of Gr(k,n) from the full k x (n-k) grid.

    Row lines run east to the boundary and column lines run south.  Interior
    crossings split into a northeast and a southwest trivalent vertex.
    ``palette`` colors (top-row tees, left-column tees, northeast, southwest).
    """
    if not 1 <= k < n:
        raise GraphError("need 1 <= k < n")
    top, left, ne, sw = palette
    m = n - k
    pos: dict[int, Point] = {}
    colors: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    nxt = 0

    def new(p: Point, c: str) -> int:
        nonlocal nxt
        pos[nxt] = p
        colors[nxt] = c
        nxt += 1
        return nxt - 1

    # (entry from west/north, exit to east/south) per box, for rows and columns
    row_in: dict[tuple[int, int], int] = {}
    row_out: dict[tuple[int, int], int] = {}
    col_in: dict[tuple[int, int], int] = {}
    col_out: dict[tuple[int, int], int] = {}
    for r in range(k):
        for c in range(m):
            x, y = float(c), float(-r)
            if r == 0 or c == 0:
                color = top if r == 0 else left
                v = new((x, y), WHITE if r == c == 0 else color)
                row_in[r, c] = row_out[r, c] = col_in[r, c] = col_out[r, c] = v
            else:
                a = new((x + 0.2, y + 0.2), ne)
                b = new((x - 0.2, y - 0.2), sw)
                edges.append((a, b))
                col_in[r, c], row_out[r, c] = a, a
                row_in[r, c], col_out[r, c] = b, b
    east = [new((float(m), float(-r)), BOUNDARY) for r in range(k)]
    south = [new((float(c), float(-k)), BOUNDARY) for c in range(m)]
    for r in range(k):
        for c in range(m - 1):
            edges.append((row_out[r, c], row_in[r, c + 1]))
        edges.append((row_out[r, m - 1], east[r]))
    for c in range(m):
        for r in range(k - 1):
            edges.append((col_out[r, c], col_in[r + 1, c]))
        edges.append((col_out[k - 1, c], south[c]))
    boundary = south + east[::-1]
    return graph_from_embedding(pos, colors, edges, boundary)


def big_cell_graph(k: int, n: int) -> PlabicGraph:
    """Reduced graph of the top positroid cell of Gr(k,n)."""
    if k == 2 and n >= 3:
        return polygon_assembly(1, n, fan_triangulation(n))
    return grid_graph(k, n)
