import itertools

import pytest

from c4pn.engine.hamilton import (
    NoHamiltonPath,
    check_lacing_path,
    find_hamilton_path,
    hamilton_path,
    lacing_graph,
    lacing_parts,
)


def test_s1_has_the_u4_u5_path():
    path = hamilton_path(1, "u4", "u5")
    check_lacing_path(1, path, "u4", "u5")
    assert len(path) == 6


def test_s1_other_pairs_are_refused():
    with pytest.raises(NoHamiltonPath):
        hamilton_path(1, "x0", "y0")


@pytest.mark.parametrize("s", range(2, 11))
def test_every_crossing_pair_is_laced(s):
    v1, v2 = lacing_parts(s)
    for a, b in itertools.product(v1, v2):
        check_lacing_path(s, hamilton_path(s, a, b), a, b)
        check_lacing_path(s, hamilton_path(s, b, a), b, a)


def test_same_part_pairs_are_refused():
    with pytest.raises(NoHamiltonPath):
        hamilton_path(3, "x0", "u2")


def test_required_edge_is_used():
    # for s = 1 the only u4-u5 path avoids x0-y0
    with pytest.raises(NoHamiltonPath):
        hamilton_path(1, "u4", "u5", ("x0", "y0"))
    for s in range(2, 7):
        path = hamilton_path(s, "u4", "u5", (f"x{s - 1}", f"y{s - 1}"))
        check_lacing_path(s, path, "u4", "u5")
        steps = {frozenset(p) for p in zip(path, path[1:])}
        assert frozenset((f"x{s - 1}", f"y{s - 1}")) in steps


def test_checker_catches_bad_paths():
    path = list(hamilton_path(2, "u4", "u5"))
    with pytest.raises(AssertionError):
        check_lacing_path(2, path[::-1], "u4", "u5")
    with pytest.raises(AssertionError):
        check_lacing_path(2, path[:-1], "u4", "u5")
    bad = ["u4", "u2"] + [w for w in path if w not in ("u4", "u2")]
    with pytest.raises(AssertionError):
        check_lacing_path(2, bad, "u4", path[-1])


def test_lacing_graph_degrees():
    adj = lacing_graph(3)
    assert len(adj) == 10
    assert len(adj["u4"]) == 3 and len(adj["x0"]) == 5 and "u4" not in adj["u2"]


def test_generic_search_on_a_small_graph():
    square = {0: {1, 3}, 1: {0, 2}, 2: {1, 3}, 3: {0, 2}}
    assert find_hamilton_path(square, 0, 1) == [0, 3, 2, 1]
    with pytest.raises(NoHamiltonPath):
        find_hamilton_path(square, 0, 2)
