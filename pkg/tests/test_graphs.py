import random
from itertools import combinations

import numpy as np
import pytest

from adesign.algebra import AbelianGroup
from adesign.errors import GraphError
from adesign.graphs import (
    ConferenceType,
    SrgParams,
    complement_graph,
    conference_core_graph,
    conference_from_graph,
    is_conference_matrix,
    is_doubly_regular_tournament,
    is_paley_type,
    is_srg,
    latin_square_graph,
    normalize_conference,
    paley_conference_matrix,
    paley_graph,
    paley_tournament,
    srg_identity_holds,
    validate_adjacency,
)
from adesign.setdiff import appendix_D, cayley_graph, make_subset

from conftest import cycle_graph, petersen_graph


def test_petersen_graph(petersen):
    params = is_srg(petersen)
    assert params == SrgParams(10, 3, 0, 1)
    assert params.is_feasible and not params.is_paley_type
    assert str(params) == "SRG(10,3,0,1)"
    assert srg_identity_holds(petersen, params)
    assert not srg_identity_holds(petersen, SrgParams(10, 3, 1, 1))


def test_complement_of_petersen(petersen):
    assert is_srg(complement_graph(petersen)) == SrgParams(10, 6, 3, 4)
    assert SrgParams(10, 3, 0, 1).complement() == SrgParams(10, 6, 3, 4)


def test_five_cycle_is_paley_type():
    params = is_srg(cycle_graph(5))
    assert params == SrgParams(5, 2, 0, 1) and is_paley_type(params)


def test_six_cycle_is_not_strongly_regular():
    assert is_srg(cycle_graph(6)) is None


def test_irregular_graph_is_not_strongly_regular():
    a = cycle_graph(6)
    a[0, 3] = a[3, 0] = 1
    assert is_srg(a) is None


@pytest.mark.parametrize("universal", [False, True])
def test_irregular_graph_with_extreme_first_vertex(universal):
    a = np.zeros((5, 5), dtype=int)
    a[1, 2] = a[2, 1] = 1
    if universal:
        a[0, 1:] = a[1:, 0] = 1
    assert is_srg(a) is None


def test_excluded_graphs():
    with pytest.raises(GraphError):
        is_srg(np.ones((4, 4), dtype=int) - np.eye(4, dtype=int))
    with pytest.raises(GraphError):
        is_srg(np.zeros((5, 5), dtype=int))
    with pytest.raises(GraphError):
        is_srg(cycle_graph(3))


def test_adjacency_validation():
    a = cycle_graph(5)
    a[0, 2] = 1
    with pytest.raises(GraphError):
        validate_adjacency(a)
    with pytest.raises(GraphError):
        validate_adjacency(np.eye(4, dtype=int))
    with pytest.raises(GraphError):
        validate_adjacency(np.zeros((3, 4), dtype=int))
    with pytest.raises(GraphError):
        validate_adjacency(2 * cycle_graph(5))


@pytest.mark.parametrize("q", [5, 9, 13, 17, 25])
def test_paley_graphs_are_paley_type(q):
    params = is_srg(paley_graph(q))
    assert params == SrgParams(q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4)


def test_paley_residue_class_checks():
    with pytest.raises(GraphError):
        paley_graph(7)
    with pytest.raises(GraphError):
        paley_tournament(13)


@pytest.mark.parametrize("q", [7, 11, 19, 27])
def test_paley_tournaments_are_doubly_regular(q):
    params = is_doubly_regular_tournament(paley_tournament(q))
    assert params.n == q and params.common_out == (q - 3) // 4


def test_transitive_tournament_is_not_doubly_regular():
    a = np.triu(np.ones((3, 3), dtype=int), 1)
    assert is_doubly_regular_tournament(a) is None
    with pytest.raises(GraphError):
        is_doubly_regular_tournament(cycle_graph(5))


@pytest.mark.parametrize("q, kind", [(5, ConferenceType.SYMMETRIC), (9, ConferenceType.SYMMETRIC), (7, ConferenceType.SKEW), (11, ConferenceType.SKEW)])
def test_paley_conference_matrices(q, kind):
    c = paley_conference_matrix(q)
    assert c.shape == (q + 1, q + 1)
    assert is_conference_matrix(c) is kind
    assert np.array_equal(c @ c.T, q * np.eye(q + 1, dtype=int))


def test_conference_round_trips():
    assert np.array_equal(conference_core_graph(paley_conference_matrix(13)), paley_graph(13))
    assert np.array_equal(conference_core_graph(paley_conference_matrix(11)), paley_tournament(11))


def test_conference_normalization_is_invariant():
    c = paley_conference_matrix(13)
    signs = np.diag([1 if i % 3 else -1 for i in range(14)])
    scrambled = signs @ c @ signs
    assert is_conference_matrix(scrambled) is ConferenceType.SYMMETRIC
    assert np.array_equal(normalize_conference(scrambled), c)
    assert np.array_equal(conference_core_graph(scrambled), paley_graph(13))


def test_not_conference_matrices(petersen):
    assert is_conference_matrix(np.ones((4, 4), dtype=int) - np.eye(4, dtype=int)) is ConferenceType.NONE
    assert is_conference_matrix(np.zeros((3, 3), dtype=int)) is ConferenceType.NONE
    with pytest.raises(GraphError):
        conference_core_graph(np.ones((4, 4), dtype=int) - np.eye(4, dtype=int))
    with pytest.raises(GraphError):
        conference_from_graph(petersen)


def test_five_cycle_borders_to_conference_matrix():
    assert is_conference_matrix(conference_from_graph(cycle_graph(5))) is ConferenceType.SYMMETRIC


@pytest.mark.parametrize("q, d", [(5, 2), (5, 3), (7, 3), (9, 4), (5, 5)])
def test_latin_square_graphs(q, d):
    assert is_srg(latin_square_graph(q, d)) == SrgParams(q * q, d * (q - 1), d * d - 3 * d + q, d * (d - 1))


def test_latin_square_range():
    with pytest.raises(GraphError):
        latin_square_graph(5, 1)
    with pytest.raises(GraphError):
        latin_square_graph(5, 6)


def common_neighbour_params(a) -> SrgParams | None:
    """Count common neighbours pair by pair from adjacency sets, with no matrix products."""
    n = len(a)
    neighbours = [set(np.flatnonzero(row).tolist()) for row in a]
    degrees = {len(s) for s in neighbours}
    if len(degrees) != 1:
        return None
    lams, mus = set(), set()
    for i, j in combinations(range(n), 2):
        (lams if j in neighbours[i] else mus).add(len(neighbours[i] & neighbours[j]))
    if len(lams) != 1 or len(mus) != 1:
        return None
    return SrgParams(n, degrees.pop(), lams.pop(), mus.pop())


def small_graphs():
    yield petersen_graph()
    yield complement_graph(petersen_graph())
    for n in range(4, 13):
        yield cycle_graph(n)
    for q in (5, 9, 13, 17, 25, 29, 37):
        yield paley_graph(q)
    for q, d in ((3, 2), (3, 3), (5, 2), (5, 3), (5, 4), (5, 5)):
        yield latin_square_graph(q, d)
        yield complement_graph(latin_square_graph(q, d))
    yield cayley_graph(appendix_D(3))
    yield cayley_graph(appendix_D(5))
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randint(5, 40)
        half = rng.sample(range(1, n // 2 + 1), rng.randint(1, max(1, (n - 1) // 2 - 1)))
        connection = {g % n for x in half for g in (x, -x)}
        yield cayley_graph(make_subset(AbelianGroup((n,)), sorted(connection)))


def test_is_srg_agrees_with_common_neighbour_count():
    srgs = 0
    for a in small_graphs():
        params = is_srg(a)
        assert params == common_neighbour_params(a)
        if params is not None:
            assert srg_identity_holds(a, params) and params.is_feasible
            srgs += 1
    assert srgs >= 20


@pytest.mark.parametrize("q", [5, 9, 13, 17, 25, 29])
def test_paley_parameters_are_self_complementary(q):
    params = is_srg(paley_graph(q))
    assert params.complement() == params
    assert is_srg(complement_graph(paley_graph(q))) == params


def doubly_regular_tournaments():
    for q in (3, 7, 11, 19):
        yield paley_tournament(q)
    for q in (7, 11):
        yield conference_core_graph(paley_conference_matrix(q))


def test_doubly_regular_tournaments_by_brute_force():
    for a in doubly_regular_tournaments():
        n = len(a)
        out = [set(np.flatnonzero(row).tolist()) for row in a]
        assert all(len(s) == (n - 1) // 2 for s in out)
        assert all(int(a[:, j].sum()) == (n - 1) // 2 for j in range(n))
        for x in range(n):
            for y in range(n):
                if x != y:
                    assert len(out[x] & out[y]) == (n - 3) // 4
        assert is_doubly_regular_tournament(a).common_out == (n - 3) // 4
