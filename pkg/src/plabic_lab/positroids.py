"""Cyclic rank matrices of points of Gr(k,n), their validation, and the
grid front whose strands realize the positroid's matching."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .plabic_core import Report
from .strand_diagrams import TripPermutation

Matrix = Sequence[Sequence[Fraction | int]]


class PositroidError(ValueError):
    pass


@dataclass(frozen=True)
class CyclicRankMatrix:
    """Window rows i = 1..n, columns j = i-1..i+n-1 (so ``window[i-1][j-i+1]``)."""

    k: int
    n: int
    window: tuple[tuple[int, ...], ...]

    def __call__(self, i: int, j: int) -> int:
        if j < i:
            return 0
        if j >= i + self.n - 1:
            return self.k
        s = (i - 1) // self.n
        i, j = i - s * self.n, j - s * self.n
        return self.window[i - 1][j - i + 1]

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "window": [list(r) for r in self.window]}

    @classmethod
    def from_json(cls, data: Mapping) -> CyclicRankMatrix:
        try:
            return cls(int(data["k"]), int(data["n"]), tuple(tuple(int(x) for x in r) for r in data["window"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise PositroidError(f"malformed rank matrix JSON: {exc}") from exc


def _rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(map(Fraction, v)) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / p[c]
                rows[r] = [a - f * b for a, b in zip(rows[r], p)]
        rank += 1
    return rank


def matrix_rank(M: Matrix) -> int:
    return _rank(M)


def _columns(M: Matrix) -> list[list[Fraction]]:
    k = len(M)
    n = len(M[0]) if k else 0
    if any(len(row) != n for row in M):
        raise PositroidError("ragged matrix")
    return [[Fraction(M[a][c]) for a in range(k)] for c in range(n)]


def rank_matrix_from_point(M: Matrix) -> CyclicRankMatrix:
    """Ranks of cyclic column intervals of a full-rank k x n matrix."""
    cols = _columns(M)
    k, n = len(M), len(cols)
    if any(all(x == 0 for x in c) for c in cols):
        raise PositroidError("zero column")
    if _rank(cols) != k:
        raise PositroidError("matrix is rank deficient")
    window = []
    for i in range(1, n + 1):
        row = [0]
        basis: list[list[Fraction]] = []
        for j in range(i, i + n):
            basis.append(cols[(j - 1) % n])
            row.append(_rank(basis))
        window.append(tuple(row))
    return CyclicRankMatrix(k, n, tuple(window))


def validate_crm(r: CyclicRankMatrix) -> Report:
    """Check C1-C5 and nonvanishing diagonal.

    The local condition C4 is imposed away from the diagonal j = i; there its
    literal form would force r_ii = 0.
    """
    rep = Report()
    v = rep.violations
    k, n = r.k, r.n
    if len(r.window) != n or any(len(row) != n + 1 for row in r.window):
        v.append("window has the wrong shape")
        return rep
    for i in range(1, n + 1):
        if r.window[i - 1][0] != 0:
            v.append(f"C1 at ({i},{i - 1})")
        if r.window[i - 1][n] != k:
            v.append(f"C2 at ({i},{i + n - 1})")
        if r.window[i - 1][1] == 0:
            v.append(f"diagonal entry r_({i},{i}) vanishes")
    for i in range(1, n + 1):
        for j in range(i - 1, i + n + 1):
            if r(i, j) - r(i + 1, j) not in (0, 1) or r(i, j) - r(i, j - 1) not in (0, 1):
                v.append(f"C3 at ({i},{j})")
    for i in range(1, n + 1):
        for j in range(i + 1, i + n + 1):
            a = r(i + 1, j - 1)
            if a == r(i + 1, j) == r(i, j - 1) and r(i, j) != a:
                v.append(f"C4 at ({i},{j})")
    return rep


def point_in_stratum(M: Matrix, r: CyclicRankMatrix) -> bool:
    """Whether M lies in the stratum of r.  A zero column puts M outside every
    stratum with nonzero diagonal; a rank-deficient M is an error."""
    cols = _columns(M)
    if _rank(cols) != len(M):
        raise PositroidError("matrix is rank deficient")
    if any(all(x == 0 for x in c) for c in cols):
        return False
    return rank_matrix_from_point(M) == r


# -- grid fronts ----------------------------------------------------------------


@dataclass(frozen=True)
class GridFront:
    """Segments are listed for one period (rows 1..n).

    ``vertical_segments`` holds (i, j) for the wall between cells (i, j-1) and
    (i, j), run upward with hairs to the left; ``horizontal_segments`` holds
    (i, j) for the wall between cells (i, j) and (i+1, j), run westward with
    hairs down.  Lattice point (i, j) is the corner below row i and left of
    column j.
    """

    k: int
    n: int
    vertical_segments: tuple[tuple[int, int], ...]
    horizontal_segments: tuple[tuple[int, int], ...]
    smoothed_corners: tuple[tuple[int, int], ...]
    crossings: tuple[tuple[int, int], ...]
    strip: tuple[Fraction, Fraction]
    strands: tuple[tuple[tuple[int, int], ...], ...]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "strip": [str(self.strip[0]), str(self.strip[1])],
            "strands": [{"waypoints": [list(p) for p in s]} for s in self.strands],
            "crossings": [list(p) for p in self.crossings],
            "smoothed_corners": [list(p) for p in self.smoothed_corners],
        }


def _walls(r: CyclicRankMatrix, i: int, j: int) -> tuple[bool, bool, bool, bool]:
    """(north, south, west, east) walls at lattice point (i, j)."""
    nw, ne, sw, se = r(i, j - 1), r(i, j), r(i + 1, j - 1), r(i + 1, j)
    return nw < ne, sw < se, nw > sw, ne > se


def grid_front(r: CyclicRankMatrix) -> tuple[GridFront, TripPermutation]:
    """Front of walls where r jumps, cut to the strip above the zero region.

    Strands enter at the diagonal corner (i, i) going up, go straight through
    crossings, turn west at smoothed corners and leave at a later diagonal
    corner arriving from the east.  The matching sends the label where a strand
    leaves to the label where it entered.
    """
    rep = validate_crm(r)
    if not rep.ok:
        raise PositroidError("invalid cyclic rank matrix: " + "; ".join(rep.violations))
    n = r.n
    vert, hor, smooth, cross = [], [], [], []
    for i in range(1, n + 1):
        for j in range(i, i + n + 1):
            if r(i, j - 1) < r(i, j):
                vert.append((i, j))
            if r(i, j) > r(i + 1, j):
                hor.append((i, j))
            N, S, W, E = _walls(r, i, j)
            if S and W and not N and not E:
                smooth.append((i, j))
            if N and S and W and E:
                cross.append((i, j))
    exit_of: dict[int, int] = {}
    strands = []
    for i in range(1, n + 1):
        p = (i, i)
        path = [p]
        heading = "N"
        for _ in range(4 * n * n + 8):
            a, b = p
            p = (a - 1, b) if heading == "N" else (a, b - 1)
            path.append(p)
            a, b = p
            if a == b:
                if heading != "W":
                    raise PositroidError(f"strand from {i} reached the diagonal going north")
                break
            N, S, W, E = _walls(r, a, b)
            if heading == "N":
                if not S:
                    raise PositroidError(f"broken wall at {p}")
                if N:
                    heading = "N"
                elif W:
                    heading = "W"
                else:
                    raise PositroidError(f"strand stops at {p}")
            else:
                if not E:
                    raise PositroidError(f"broken wall at {p}")
                if W:
                    heading = "W"
                else:
                    raise PositroidError(f"strand stops at {p}")
        else:
            raise PositroidError(f"strand from {i} does not return to the boundary")
        m = (p[0] - 1) % n + 1
        exit_of[i] = m
        strands.append(tuple(path))
    matching = TripPermutation({m: i for i, m in exit_of.items()})
    front = GridFront(
        r.k, n, tuple(vert), tuple(hor), tuple(smooth), tuple(cross),
        (Fraction(1, 2), Fraction(2 * n + 1, 2)), tuple(strands),
    )
    return front, matching


# -- enumeration and inverse search ---------------------------------------------


def all_cyclic_rank_matrices(k: int, n: int) -> Iterator[CyclicRankMatrix]:
    """Every valid cyclic rank matrix of type (k, n) with nonzero diagonal."""
    rows = []
    for jumps in itertools.combinations(range(1, n), k - 1):
        row = [0, 1]
        for t in range(1, n):
            row.append(row[-1] + (1 if t in jumps else 0))
        rows.append(tuple(row))
    for combo in itertools.product(rows, repeat=n):
        r = CyclicRankMatrix(k, n, tuple(combo))
        if validate_crm(r).ok:
            yield r


def rank_matrix_from_matching(perm: TripPermutation, k: int, n: int) -> CyclicRankMatrix:
    """Brute-force inverse of the grid-front matching (small k, n only)."""
    for r in all_cyclic_rank_matrices(k, n):
        if grid_front(r)[1] == perm:
            return r
    raise PositroidError("no cyclic rank matrix realizes this matching")


def bases(r: CyclicRankMatrix) -> set[tuple[int, ...]]:
    """k-subsets J with |J meet [i, j]| <= r_ij for every cyclic interval."""
    out = set()
    for J in itertools.combinations(range(1, r.n + 1), r.k):
        ok = True
        for i in range(1, r.n + 1):
            cnt = 0
            for j in range(i, i + r.n):
                if ((j - 1) % r.n) + 1 in J:
                    cnt += 1
                if cnt > r(i, j):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(J)
    return out
