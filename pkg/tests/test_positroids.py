from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plabic_lab.positroids import (
    CyclicRankMatrix,
    PositroidError,
    all_cyclic_rank_matrices,
    bases,
    grid_front,
    matrix_rank,
    point_in_stratum,
    rank_matrix_from_matching,
    rank_matrix_from_point,
    validate_crm,
)
from plabic_lab.strand_diagrams import TripPermutation, trip_permutation

from conftest import top_cell_orbit

EX32 = [[0, 1, 1, 1, 1], [0, 0, 1, 1, 1], [1, 0, 0, 0, 0]]
BIG25 = CyclicRankMatrix(2, 5, tuple((0, 1, 2, 2, 2, 2) for _ in range(5)))


def span_oracle(M):
    """i -> first j > i with column i in the span of columns i+1..j, reduced mod n."""
    k, n = len(M), len(M[0])
    col = lambda j: [Fraction(M[a][(j - 1) % n]) for a in range(k)]  # noqa: E731
    out = {}
    for i in range(1, n + 1):
        for j in range(i + 1, i + n + 1):
            rest = [col(x) for x in range(i + 1, j + 1)]
            if matrix_rank(rest + [col(i)]) == matrix_rank(rest):
                out[i] = (j - 1) % n + 1
                break
    return TripPermutation(out)


def minors_support(M):
    k, n = len(M), len(M[0])
    return {J for J in itertools.combinations(range(1, n + 1), k) if matrix_rank([[M[a][j - 1] for j in J] for a in range(k)]) == k}


matrices = st.integers(1, 4).flatmap(
    lambda k: st.integers(k + 1, 8).flatmap(
        lambda n: st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=k, max_size=k)
    )
)


def _usable(M):
    k, n = len(M), len(M[0])
    return matrix_rank(M) == k and not any(all(M[a][c] == 0 for a in range(k)) for c in range(n))


def test_ex32_rank_matrix_and_front():
    r = rank_matrix_from_point(EX32)
    assert r.window == (
        (0, 1, 2, 3, 3, 3),
        (0, 1, 2, 2, 2, 3),
        (0, 1, 1, 1, 2, 3),
        (0, 1, 1, 2, 3, 3),
        (0, 1, 2, 3, 3, 3),
    )
    front, matching = grid_front(r)
    assert matching.as_tuple() == (1, 2, 4, 5, 3)
    assert len(front.strands) == 5
    assert len(front.crossings) == 6
    assert point_in_stratum(EX32, r)


def test_generic_matrix_is_big_cell():
    M = [[1, 2, 3, 5, 7], [1, 3, 6, 11, 19]]
    assert rank_matrix_from_point(M) == BIG25
    assert grid_front(BIG25)[1].as_tuple() == (3, 4, 5, 1, 2)


def test_k1_n2_front():
    r = rank_matrix_from_point([[1, 1]])
    front, matching = grid_front(r)
    assert matching.as_tuple() == (2, 1)
    assert len(front.strands) == 2


def test_proportional_columns_leave_big_cell():
    assert not point_in_stratum([[1, 2, 0, 1, 1], [1, 2, 1, 0, 3]], BIG25)


def test_errors():
    with pytest.raises(PositroidError):
        rank_matrix_from_point([[1, 0, 1], [0, 0, 0]])
    with pytest.raises(PositroidError):
        rank_matrix_from_point([[1, 0, 1], [0, 0, 1]])
    with pytest.raises(PositroidError):
        point_in_stratum([[1, 1], [1, 1]], BIG25)
    bad = CyclicRankMatrix(2, 5, ((0, 2, 2, 2, 2, 2),) + BIG25.window[1:])
    with pytest.raises(PositroidError):
        grid_front(bad)


def test_validate_reports():
    step = CyclicRankMatrix(2, 4, ((0, 1, 2, 2, 2), (0, 1, 2, 2, 2), (0, 1, 2, 2, 2), (0, 1, 1, 2, 2)))
    assert validate_crm(step).ok
    jump = CyclicRankMatrix(2, 4, ((0, 2, 2, 2, 2),) * 4)
    rep = validate_crm(jump)
    assert any(v.startswith("C3") for v in rep.violations)
    c4 = CyclicRankMatrix(2, 4, ((0, 1, 1, 2, 2),) * 4)
    assert any(v.startswith("C4") for v in validate_crm(c4).violations)
    zero = CyclicRankMatrix(1, 3, ((0, 0, 1, 1),) * 3)
    assert any("vanishes" in v for v in validate_crm(zero).violations)
    assert validate_crm(CyclicRankMatrix(2, 4, ((0, 1, 2, 2),) * 4)).violations == ["window has the wrong shape"]


def test_json_round_trip():
    r = rank_matrix_from_point(EX32)
    assert CyclicRankMatrix.from_json(json.loads(json.dumps(r.to_json()))) == r
    with pytest.raises(PositroidError):
        CyclicRankMatrix.from_json({"k": 2})
    assert json.loads(json.dumps(grid_front(r)[0].to_json()))["strip"] == ["1/2", "11/2"]


def test_enumeration_counts():
    assert [sum(1 for _ in all_cyclic_rank_matrices(k, n)) for k, n in ((2, 4), (2, 5), (3, 5))] == [11, 26, 66]


def test_enumeration_matches_realized_strata():
    seen = set()
    for ent in itertools.product((-1, 0, 1), repeat=8):
        M = [list(ent[:4]), list(ent[4:])]
        if _usable(M):
            seen.add(rank_matrix_from_point(M))
    assert seen == set(all_cyclic_rank_matrices(2, 4))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_matching_round_trip_gr2(n):
    rs = list(all_cyclic_rank_matrices(2, n))
    matchings = [grid_front(r)[1] for r in rs]
    assert len(set(matchings)) == len(rs)
    for r, m in zip(rs, matchings):
        assert rank_matrix_from_matching(m, 2, n) == r


def test_reduced_graph_matching_round_trip():
    for n in (4, 5, 6):
        for g in top_cell_orbit(2, n).nodes:
            p = trip_permutation(g)
            assert grid_front(rank_matrix_from_matching(p, 2, n))[1] == p


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matrix_properties(M):
    if not _usable(M):
        return
    r = rank_matrix_from_point(M)
    assert validate_crm(r).ok
    front, matching = grid_front(r)
    assert matching == span_oracle(M)
    # the stratum's positroid contains the matroid of any of its points
    assert minors_support(M) <= bases(r)
    for path in front.strands:
        assert len(set(path)) == len(path)
    assert point_in_stratum(M, r)


def test_random_matrices_with_fractions():
    rng = random.Random(11)
    done = 0
    while done < 200:
        k = rng.randint(1, 4)
        n = rng.randint(k + 1, 9)
        M = [[Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(n)] for _ in range(k)]
        if not _usable(M):
            continue
        done += 1
        r = rank_matrix_from_point(M)
        assert validate_crm(r).ok
        assert grid_front(r)[1] == span_oracle(M)
