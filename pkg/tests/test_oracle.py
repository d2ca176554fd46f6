import pytest

from hgcut import Hypergraph, brute_mincut, brute_st_mincut, cut_value
from conftest import random_instance


def test_triangle(triangle):
    res = brute_mincut(triangle)
    assert res.value == 2
    assert res.provenance == "oracle"


def test_single_spanning_edge(spanning_edge):
    assert brute_mincut(spanning_edge).value == 7


def test_disconnected_pair():
    assert brute_mincut(Hypergraph(4, [[0, 1], [2, 3]])).value == 0


def test_partition_recomputes_to_value():
    for seed in range(100):
        h = random_instance(seed)
        res = brute_mincut(h)
        assert cut_value(h, res.partition) == res.value


def test_size_guard():
    h = Hypergraph(25, [[0, 1]])
    with pytest.raises(ValueError, match="too large"):
        brute_mincut(h)
    with pytest.raises(ValueError):
        brute_mincut(Hypergraph(1))


def test_st_path():
    path = Hypergraph(3, [[0, 1], [1, 2]])
    assert brute_st_mincut(path, 0, 2) == 1


def test_st_components():
    h = Hypergraph(4, [[0, 1], [2, 3]])
    assert brute_st_mincut(h, 0, 2) == 0


def test_st_triangle(triangle):
    for s in range(3):
        for t in range(3):
            if s != t:
                assert brute_st_mincut(triangle, s, t) == 2


def test_st_same_vertex_rejected(triangle):
    with pytest.raises(ValueError, match="differ"):
        brute_st_mincut(triangle, 1, 1)


def test_global_is_min_over_st_from_zero():
    for seed in range(60):
        h = random_instance(seed)
        truth = brute_mincut(h).value
        best = min(brute_st_mincut(h, 0, t) for t in range(1, h.vertex_count))
        assert best == truth


def test_weighted_values_exact_ints():
    h = Hypergraph(4, [[0, 1], [1, 2], [2, 3], [0, 3]], [10**12, 1, 10**12, 1])
    assert brute_mincut(h).value == 2
