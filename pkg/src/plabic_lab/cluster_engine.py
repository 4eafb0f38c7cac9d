"""Seeds, seed mutation and cluster X/A transformations on exact rational points.

Monomials are tracked on a fixed basis of the lattice N (X side) or its dual
M (A side); the seed vectors e_i need not span N.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .plabic_core import PlabicGraph, dual_quiver, faces, validate_graph, GraphError

Vector = tuple[int, ...]


class PoleError(ArithmeticError):
    """The point lies on the pole locus of the birational map."""


@dataclass(frozen=True)
class Seed:
    rank: int
    form: tuple[tuple[int, ...], ...]
    vectors: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if len(self.form) != self.rank or any(len(r) != self.rank for r in self.form):
            raise ValueError("form must be rank x rank")
        for a in range(self.rank):
            for b in range(self.rank):
                if self.form[a][b] != -self.form[b][a]:
                    raise ValueError("form is not antisymmetric")
        for v in self.vectors:
            if len(v) != self.rank:
                raise ValueError("vector of the wrong length")
            if gcd(*v) != 1:
                raise ValueError(f"vector {v} is not primitive")
        if len(set(self.vectors)) != len(self.vectors):
            raise ValueError("seed vectors must be distinct")

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        """The form {u, v}."""
        return sum(u[a] * self.form[a][b] * v[b] for a in range(self.rank) for b in range(self.rank) if u[a] and v[b])

    def exchange_matrix(self) -> list[list[int]]:
        """{e_i, e_j}; entry (i, j) counts arrows i -> j."""
        return [[self.pair(u, v) for v in self.vectors] for u in self.vectors]

    def to_json(self) -> dict:
        return {"rank": self.rank, "form": [list(r) for r in self.form], "vectors": [list(v) for v in self.vectors]}

    @classmethod
    def from_json(cls, data: Mapping) -> Seed:
        return cls(
            int(data["rank"]),
            tuple(tuple(int(x) for x in r) for r in data["form"]),
            tuple(tuple(int(x) for x in v) for v in data["vectors"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class TorusPoint:
    """Values of the coordinate monomials of a fixed lattice basis."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(v == 0 for v in self.values):
            raise ValueError("torus points have nonzero coordinates")

    def monomial(self, exps: Sequence[int]) -> Fraction:
        out = Fraction(1)
        for x, e in zip(self.values, exps):
            if e:
                out *= x**e
        return out


def _check_index(s: Seed, k: int) -> None:
    if not 0 <= k < len(s.vectors):
        raise IndexError(f"mutation index {k} out of range 0..{len(s.vectors) - 1}")


def mutate_seed(s: Seed, k: int) -> Seed:
    _check_index(s, k)
    ek = s.vectors[k]
    out = []
    for i, ei in enumerate(s.vectors):
        if i == k:
            out.append(tuple(-x for x in ek))
        else:
            c = max(s.pair(ei, ek), 0)
            out.append(tuple(a + c * b for a, b in zip(ei, ek)))
    return Seed(s.rank, s.form, tuple(out))


def fz_mutation(b: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Matrix mutation of an exchange matrix at k."""
    m = len(b)
    out = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            else:
                bik, bkj = b[i][k], b[k][j]
                sign = (bik > 0) - (bik < 0)
                out[i][j] = b[i][j] + sign * max(bik * bkj, 0)
    return out


def _factor(base: Fraction, signed: bool) -> Fraction:
    f = 1 - base if signed else 1 + base
    if f == 0:
        raise PoleError("1 {} z^e_k vanishes at this point".format("-" if signed else "+"))
    return f


def x_transform(s: Seed, p: TorusPoint, k: int, signed: bool = False) -> TorusPoint:
    """Point of the X-torus of mu_k s whose coordinates pull back to
    z^n (1 + z^{e_k})^{e_k, n} (minus sign when ``signed``)."""
    _check_index(s, k)
    ek = s.vectors[k]
    f = _factor(p.monomial(ek), signed)
    basis = [tuple(int(a == b) for b in range(s.rank)) for a in range(s.rank)]
    return TorusPoint(tuple(p.values[a] * f ** s.pair(ek, basis[a]) for a in range(s.rank)))


def a_transform(s: Seed, p: TorusPoint, k: int, signed: bool = False) -> TorusPoint:
    """Point of the A-torus: z^m pulls back to z^m (1 + z^{{e_k, -}})^{-<e_k, m>}.

    Coordinates of ``p`` are on the dual basis of M.
    """
    _check_index(s, k)
    ek = s.vectors[k]
    functional = [sum(ek[a] * s.form[a][b] for a in range(s.rank)) for b in range(s.rank)]
    f = _factor(p.monomial(functional), signed)
    return TorusPoint(tuple(p.values[a] * f ** (-ek[a]) for a in range(s.rank)))


def cluster_coordinates(s: Seed, p: TorusPoint) -> tuple[Fraction, ...]:
    """Values z^{e_i} at p."""
    return tuple(p.monomial(e) for e in s.vectors)


# -- sign twists ----------------------------------------------------------------


def sign_twist(s: Seed) -> tuple[int, ...] | None:
    """Signs sigma on the basis of N with sigma(e_i) = -1 for every i, if any.

    A GF(2) solve; None when no such homomorphism exists.
    """
    rows = [[x % 2 for x in e] + [1] for e in s.vectors]
    m = s.rank
    piv_cols = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(not any(row[:m]) and row[m] for row in rows):
        return None
    bits = [0] * m
    for i, c in enumerate(piv_cols):
        bits[c] = rows[i][m]
    return tuple(-1 if b else 1 for b in bits)


def apply_twist(sigma: Sequence[int], p: TorusPoint) -> TorusPoint:
    return TorusPoint(tuple(x * t for x, t in zip(p.values, sigma)))


# -- seeds of plabic graphs -----------------------------------------------------


def seed_from_graph(g: PlabicGraph, marked: set[int] | frozenset[int] = frozenset()) -> tuple[Seed, list[int]]:
    """Seed on the first homology of ``g``.

    The boundary cycles of interior faces form a basis of H_1 of a disk graph;
    the form on that basis is the interior dual quiver.  Faces in ``marked``
    contribute no seed vector.  Returns the seed and the face ids of its
    vectors, in order.
    """
    rep = validate_graph(g)
    if not rep.ok:
        raise GraphError("; ".join(rep.violations))
    q = dual_quiver(g)
    rank = len(g.edges) - len(g.colors) + 1
    if rank != len(q.vertices):
        raise GraphError("face cycles do not form a basis of the first homology")
    ids = [f for f in q.vertices if f not in marked]
    pos = {f: a for a, f in enumerate(q.vertices)}
    vectors = tuple(tuple(int(b == pos[f]) for b in range(rank)) for f in ids)
    return Seed(rank, q.arrow_count, vectors), ids


__all__ = [
    "PoleError",
    "Seed",
    "TorusPoint",
    "a_transform",
    "apply_twist",
    "cluster_coordinates",
    "faces",
    "fz_mutation",
    "mutate_seed",
    "seed_from_graph",
    "sign_twist",
    "x_transform",
]
