from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings, strategies as st

from plabic_lab.boundary_measurement import (
    EdgeWeights,
    OrientationError,
    PerfectOrientation,
    enumerate_flows,
    face_coordinates,
    face_holonomy,
    face_labels,
    is_plucker_point,
    matrix_from_plucker,
    minors,
    pairwise_weakly_separated,
    perfect_orientation,
    perfect_orientations,
    plucker_vector,
    same_up_to_scale,
    unit_weights,
    weakly_separated,
    weights_from_face_coordinates,
    weights_to_json,
)
from plabic_lab.generators import (
    big_cell_graph,
    fan_triangulation,
    gr25_example_graph,
    gr23_graph,
    polygon_assembly,
    square_graph,
    triangle_graph,
    wiring_graph,
)
from plabic_lab.plabic_core import WHITE, GraphError, dual_quiver, star_graph
from plabic_lab.positroids import bases, rank_matrix_from_matching
from plabic_lab.square_move import POSITIVE, DomainError, FaceCoordinates, transport_coords
from plabic_lab.strand_diagrams import trip_permutation

from conftest import top_cell_orbit

F = Fraction


def random_weights(g, rng, signs=False):
    def one():
        x = F(rng.randint(1, 12), rng.randint(1, 12))
        return -x if signs and rng.random() < 0.5 else x

    return EdgeWeights({e: one() for e in g.edges})


def crossing_oracle(A, B, n):
    """Walk the circle; the two differences may occupy at most two arcs."""
    A, B = set(A), set(B)
    tags = [("a" if i in A else "b") for i in range(1, n + 1) if (i in A) != (i in B)]
    changes = sum(1 for i in range(len(tags)) if tags[i] != tags[i - 1])
    return changes <= 2


def test_gr23_orientation_and_flows():
    g = gr23_graph()
    po = perfect_orientation(g, sources={2, 3})
    assert po.source_set == (2, 3)
    assert enumerate_flows(g, po, (2, 3))[0].paths == ()
    assert [f.paths for f in enumerate_flows(g, po, (1, 3))] == [((2, 1),)]


def test_white_leaf_orientation():
    po = perfect_orientation(star_graph(WHITE, 1))
    assert po.source_set == (1,)


def test_white_star_single_paths():
    g = star_graph(WHITE, 3)
    pv = plucker_vector(g, EdgeWeights({0: F(2), 1: F(3), 2: F(5)}))
    assert pv.values == {(1,): 1, (2,): F(3, 2), (3,): F(5, 2)}


def test_unit_weights_count_flows_on_gr25_example():
    g = gr25_example_graph()
    pv = plucker_vector(g, unit_weights(g))
    po = perfect_orientation(g)
    for J, v in pv.values.items():
        assert v == len(enumerate_flows(g, po, J)) >= 1


def test_missing_orientation_reported():
    with pytest.raises(OrientationError):
        perfect_orientation(gr23_graph(), sources={1})


def test_gr23_base_case_values():
    g = gr23_graph()
    w = EdgeWeights({0: F(2), 1: F(3), 2: F(7)})
    pv = plucker_vector(g, w, perfect_orientation(g, sources={2, 3}))
    X = face_coordinates(g, w, include_boundary=True).values
    assert pv[(2, 3)] == 1
    assert pv[(1, 2)] == X[g.boundary_face(3)]
    assert pv[(1, 3)] == 1 / X[g.boundary_face(1)]


def test_gr23_labels():
    g = gr23_graph()
    assert sorted(face_labels(g).values()) == [(1, 2), (1, 3), (2, 3)]


def test_gr25_triangulation_labels():
    g = polygon_assembly(1, 5, [(1, 2, 3), (1, 3, 5), (3, 4, 5)])
    labels = face_labels(g)
    assert sorted(labels[f.id] for f in g.interior_faces) == [(1, 3), (3, 5)]


def test_triangle_graph_three_labels_frozen():
    g = triangle_graph(3)
    labels = face_labels(g)
    assert [labels[g.boundary_face(i)] for i in range(1, 10)] == [
        (2, 4, 5), (3, 4, 5), (4, 5, 8), (5, 7, 8), (6, 7, 8), (2, 7, 8), (1, 2, 8), (1, 2, 9), (1, 2, 5),
    ]
    assert [labels[f.id] for f in g.interior_faces] == [(2, 5, 8)]


def test_weak_separation_examples():
    assert weakly_separated((1, 3), (1, 3), 4)
    assert not weakly_separated((1, 3), (2, 4), 4)
    assert weakly_separated((1, 2), (3, 4), 4)
    with pytest.raises(ValueError):
        weakly_separated((1,), (1, 2), 4)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 9).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))), st.randoms(use_true_random=False))
def test_weak_separation_matches_arc_oracle(nk, rnd):
    n, k = nk
    A = rnd.sample(range(1, n + 1), k)
    B = rnd.sample(range(1, n + 1), k)
    assert weakly_separated(A, B, n) == crossing_oracle(A, B, n)


def test_unit_weights_give_unit_coordinates():
    g = gr25_example_graph()
    assert set(face_coordinates(g, unit_weights(g), include_boundary=True).values.values()) == {1}


def test_degenerate_square_is_flagged():
    g = square_graph()
    f = g.interior_faces[0].id
    fc = face_coordinates(g, unit_weights(g), include_boundary=True)
    with pytest.raises(DomainError):
        transport_coords(fc.to_positive(), f, quiver=dual_quiver(g, True))


def test_same_coloured_edge_flagged_when_strict():
    g = big_cell_graph(3, 6)
    assert any(g.colors[a] == g.colors[b] != "boundary" for a, b in g.edges.values())
    with pytest.raises(GraphError):
        face_coordinates(g, unit_weights(g))
    face_coordinates(g, unit_weights(g), strict=False)


def test_exports():
    g = gr25_example_graph()
    w = random_weights(g, random.Random(1))
    pv = plucker_vector(g, w)
    lines = pv.to_csv().strip().splitlines()
    assert lines[0] == "subset,numerator,denominator" and len(lines) == 11
    assert EdgeWeights.from_json(json.loads(weights_to_json(w))) == w
    assert json.loads(json.dumps(pv.to_json()))


def test_parallel_jobs_agree():
    g = big_cell_graph(2, 7)
    w = random_weights(g, random.Random(3))
    assert plucker_vector(g, w, jobs=2).values == plucker_vector(g, w).values


GRAPHS = []
for _n in (4, 5, 6, 7):
    GRAPHS += top_cell_orbit(2, _n).nodes[:20]
GRAPHS += [gr25_example_graph(), triangle_graph(2), wiring_graph(3, [2, 1, 2]), big_cell_graph(3, 6)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(GRAPHS) - 1), st.integers(0, 10**6))
def test_plucker_relations_and_reconstruction(i, seed):
    g = GRAPHS[i]
    pv = plucker_vector(g, random_weights(g, random.Random(seed), signs=True))
    assert is_plucker_point(pv)
    assert same_up_to_scale(minors(matrix_from_plucker(pv)), pv.values)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(GRAPHS) - 1), st.integers(0, 10**6), st.data())
def test_gauge_invariance(i, seed, data):
    g = GRAPHS[i]
    rng = random.Random(seed)
    w = random_weights(g, rng)
    v = data.draw(st.sampled_from(g.internal_vertices))
    lam = F(rng.randint(1, 9), rng.randint(1, 9))
    w2 = w.gauge(g, v, lam)
    assert plucker_vector(g, w2).values == plucker_vector(g, w).values
    assert face_coordinates(g, w2, True, strict=False) == face_coordinates(g, w, True, strict=False)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(GRAPHS) - 1), st.integers(0, 10**6))
def test_orientation_independence(i, seed):
    g = GRAPHS[i]
    w = random_weights(g, random.Random(seed))
    pos = list(perfect_orientations(g))[:4]
    ref = {J: abs(x) for J, x in plucker_vector(g, w, pos[0]).values.items()}
    for po in pos[1:]:
        assert same_up_to_scale(ref, {J: abs(x) for J, x in plucker_vector(g, w, po).values.items()})


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(GRAPHS) - 1), st.integers(0, 10**6))
def test_support_is_positroid(i, seed):
    g = GRAPHS[i]
    k = len(perfect_orientation(g).source_set)
    if k != 2 or g.n > 6:
        return
    r = rank_matrix_from_matching(trip_permutation(g), k, g.n)
    assert plucker_vector(g, unit_weights(g)).support() == bases(r)
    assert plucker_vector(g, random_weights(g, random.Random(seed))).support() == bases(r)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(GRAPHS) - 1), st.integers(0, 10**6))
def test_face_coordinates_round_trip(i, seed):
    g = GRAPHS[i]
    w = random_weights(g, random.Random(seed), signs=True)
    fc = face_coordinates(g, w, include_boundary=True, strict=False)
    prod = F(1)
    for x in fc.values.values():
        prod *= x
    assert prod == 1
    w2 = weights_from_face_coordinates(g, fc)
    assert face_coordinates(g, w2, include_boundary=True, strict=False) == fc
    a = plucker_vector(g, w).values
    b = plucker_vector(g, w2).values
    assert same_up_to_scale(a, b)


@pytest.mark.parametrize("k,n", [(2, 5), (2, 6), (3, 6)])
def test_labels_weakly_separated_over_orbit(k, n):
    for g in top_cell_orbit(k, n).nodes:
        labels = face_labels(g)
        assert all(len(x) == k for x in labels.values())
        assert len(set(labels.values())) == len(labels)
        assert pairwise_weakly_separated(labels.values(), n)
