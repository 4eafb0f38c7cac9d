from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import assume, given, settings, strategies as st

from plabic_lab.boundary_measurement import face_labels
from plabic_lab.cluster_engine import PoleError, TorusPoint, cluster_coordinates, mutate_seed, seed_from_graph, x_transform
from plabic_lab.generators import fan_triangulation, gr23_graph, polygon_assembly, square_graph
from plabic_lab.plabic_core import BLACK, WHITE, GraphError, dual_quiver
from plabic_lab.square_move import (
    POSITIVE,
    STANDARD,
    DomainError,
    FaceCoordinates,
    MatrixModel,
    canonical_form,
    general_square_move,
    matrix_oracle_coords,
    normalize,
    square_faces,
    square_move,
    transport_coords,
    transport_local,
)
from plabic_lab.strand_diagrams import is_reduced, trip_permutation

from conftest import top_cell_orbit

F = Fraction
POS = ("NE", "ES", "SW", "WN")


def test_square_graph_move_swaps_colours():
    g = square_graph()
    f = g.interior_faces[0].id
    h = square_move(g, f)
    for v in g.internal_vertices:
        assert {g.colors[v], h.colors[v]} == {WHITE, BLACK}
    assert trip_permutation(h) == trip_permutation(g)
    back = square_move(h, f)
    assert canonical_form(back) == canonical_form(g)


def test_non_square_face_rejected():
    g = gr23_graph()
    with pytest.raises(GraphError):
        square_move(g, 0)
    assert square_faces(g) == []


def test_unit_central_value():
    a, b, c, d = F(2), F(3), F(5), F(7)
    X = transport_local({"NE": a, "ES": b, "SW": c, "WN": d, "M": F(1)})
    assert X == {"NE": 2 * a, "ES": b / 2, "SW": 2 * c, "WN": d / 2, "M": F(1)}


def test_degenerate_central_value():
    with pytest.raises(DomainError):
        transport_local({"NE": 1, "ES": 1, "SW": 1, "WN": 1, "M": F(-1)})


def test_oracle_example():
    m = MatrixModel({"S": (1, 0), "W": (1, 1), "N": (0, 1), "E": (-1, 1)})
    oc = matrix_oracle_coords(m)
    assert [oc.X[p] for p in POS] == [1, -1, 1, 1] and oc.X["M"] == 1
    assert [oc.Y[p] for p in POS] == [F(1, 2), -2, F(1, 2), 2] and oc.Y["M"] == 1
    assert oc.plucker_ok
    assert transport_local(oc.Y) == oc.X


def test_proportional_adjacent_columns_rejected():
    with pytest.raises(DomainError):
        matrix_oracle_coords(MatrixModel({"S": (1, 0), "W": (2, 0), "N": (0, 1), "E": (-1, 1)}))


def test_transport_needs_positive_convention():
    fc = FaceCoordinates({0: F(1), 1: F(2)}, STANDARD)
    with pytest.raises(ValueError):
        transport_coords(fc, 0, neighbors={"NE": 1})
    with pytest.raises(ValueError):
        FaceCoordinates({0: F(0)})
    assert fc.negated().negated() == fc
    assert fc.to_positive().values == {0: F(-1), 1: F(-2)}


def test_exhaustive_small_oracle():
    # all models with S fixed to (1, 0) and other entries in [-3, 3]
    count = 0
    for w1, w2, n1, n2, e1, e2 in product(range(-3, 4), repeat=6):
        m = MatrixModel({"S": (1, 0), "W": (w1, w2), "N": (n1, n2), "E": (e1, e2)})
        if any(m.minor(a, b) == 0 for a, b in combinations("SWNE", 2)):
            continue
        oc = matrix_oracle_coords(m)
        assert oc.plucker_ok
        assert transport_local(oc.Y) == oc.X
        assert oc.X["M"] * oc.Y["M"] == 1
        count += 1
    assert count > 1000


nonzero = st.fractions(min_value=F(-30), max_value=F(30), max_denominator=20).filter(lambda x: x not in (0, -1))


@settings(max_examples=200, deadline=None)
@given(st.tuples(*[nonzero] * 5))
def test_rotated_double_transport_is_identity(vals):
    Y = dict(zip(POS + ("M",), vals))
    X = transport_local(Y)
    assume(X["M"] != -1)
    # after the move the frame turns: position NE carries the old WN value, and so on
    turned = {"NE": X["WN"], "ES": X["NE"], "SW": X["ES"], "WN": X["SW"], "M": X["M"]}
    Z = transport_local(turned)
    assert {"WN": Z["NE"], "NE": Z["ES"], "ES": Z["SW"], "SW": Z["WN"], "M": Z["M"]} == Y


@settings(max_examples=200, deadline=None)
@given(st.tuples(*[st.integers(-9, 9)] * 8))
def test_random_oracle_models(ent):
    cols = dict(zip("SWNE", zip(ent[::2], ent[1::2])))
    m = MatrixModel(cols)
    assume(all(m.minor(a, b) != 0 for a, b in combinations("SWNE", 2)))
    oc = matrix_oracle_coords(m)
    ids = {"M": 0, "NE": 1, "ES": 2, "SW": 3, "WN": 4}
    Y = FaceCoordinates({ids[p]: v for p, v in oc.Y.items()}, POSITIVE)
    X = transport_coords(Y, 0, neighbors={p: ids[p] for p in POS})
    assert X.values == {ids[p]: v for p, v in oc.X.items()}


def _flip(tris, diag):
    a, c = diag
    two = [t for t in tris if a in t and c in t]
    (b,) = set(two[0]) - {a, c}
    (d,) = set(two[1]) - {a, c}
    rest = [t for t in tris if t not in two]
    return rest + [tuple(sorted((a, b, d))), tuple(sorted((b, c, d)))]


@pytest.mark.parametrize("tris", [fan_triangulation(6), [(1, 2, 3), (3, 4, 5), (1, 5, 6), (1, 3, 5)]])
def test_square_move_is_diagonal_flip(tris):
    g = polygon_assembly(1, 6, tris)
    labels = face_labels(g)
    for f in g.interior_faces:
        moved, _ = general_square_move(g, f.id)
        flipped = polygon_assembly(1, 6, _flip(tris, labels[f.id]))
        assert canonical_form(normalize(moved)) == canonical_form(normalize(flipped))


GRAPHS = top_cell_orbit(2, 6).nodes + top_cell_orbit(3, 6).nodes[:25]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(GRAPHS) - 1), st.data())
def test_transport_matches_cluster_transformation(i, data):
    g = GRAPHS[i]
    fs = square_faces(g)
    assume(fs)
    f = data.draw(st.sampled_from(fs))
    s, ids = seed_from_graph(g)
    vals = [data.draw(nonzero) for _ in ids]
    p = TorusPoint(tuple(vals))
    k = ids.index(f)
    try:
        moved = x_transform(s, p, k)
        fc = transport_coords(FaceCoordinates(dict(zip(ids, vals)), POSITIVE), f, quiver=dual_quiver(g))
    except (PoleError, DomainError):
        assume(False)
    assert tuple(fc.values[x] for x in ids) == cluster_coordinates(mutate_seed(s, k), moved)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(GRAPHS) - 1), st.data())
def test_moves_preserve_trip_and_reducedness(i, data):
    g = GRAPHS[i]
    f = data.draw(st.sampled_from(square_faces(g)))
    h, nf = general_square_move(g, f)
    assert trip_permutation(h) == trip_permutation(g)
    assert is_reduced(h).ok
    assert nf in square_faces(h)
    back, _ = general_square_move(h, nf)
    assert canonical_form(normalize(back)) == canonical_form(normalize(g))
