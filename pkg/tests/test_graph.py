import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c4pn.graph import (
    BLUE,
    RED,
    ColouredGraph,
    blue_extends_to_paths,
    blue_is_target_path,
    blue_path_vertices,
    canonical_key,
    has_c4_with,
    is_connected,
    key_to_graph,
)
from oracles import closes_c4, edge_set, find_isomorphism, is_isomorphism, is_single_path_on, is_union_of_paths

MAXV = 13


@st.composite
def coloured_graphs(draw, max_v=MAXV, density=None):
    v = draw(st.integers(2, max_v))
    p = density if density is not None else draw(st.floats(0.0, 0.6))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    blue, red = [], []
    for a in range(v):
        for b in range(a + 1, v):
            r = rng.random()
            if r < p / 2:
                blue.append((a, b))
            elif r < p:
                red.append((a, b))
    return v, ColouredGraph.from_edges(blue, red)


@st.composite
def path_forests(draw, max_v=MAXV):
    """Blue graphs that are unions of paths, plus a few arbitrary ones."""
    v = draw(st.integers(2, max_v))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    verts = list(range(v))
    rng.shuffle(verts)
    edges = []
    i = 0
    while i < v:
        length = rng.randint(1, v - i)
        seg = verts[i : i + length]
        edges += list(zip(seg, seg[1:]))
        i += length
    if rng.random() < 0.3 and v >= 3:
        a, b = rng.sample(range(v), 2)
        if (a, b) not in edges and (b, a) not in edges:
            edges.append((a, b))
    return v, ColouredGraph.from_edges(edges, [])


@settings(max_examples=1500, deadline=None)
@given(coloured_graphs(), st.data())
def test_has_c4_with_matches_oracle(case, data):
    v, g = case
    a, b = data.draw(st.sampled_from([(a, b) for a in range(v) for b in range(a + 1, v)]))
    red = edge_set(g, RED) - {frozenset((a, b))}
    pos = g.remove(a, b) if g.colour_of(a, b) is not None else g
    assert has_c4_with(pos.red, a, b) == closes_c4(red, a, b, v)


@settings(max_examples=1500, deadline=None)
@given(path_forests(), st.data())
def test_blue_extends_to_paths_matches_oracle(case, data):
    v, g = case
    if not is_union_of_paths(edge_set(g, BLUE)):
        return
    a, b = data.draw(st.sampled_from([(a, b) for a in range(v) for b in range(a + 1, v)]))
    if g.colour_of(a, b) is not None:
        return
    assert blue_extends_to_paths(g.blue, a, b) == is_union_of_paths(edge_set(g, BLUE) | {frozenset((a, b))})


@settings(max_examples=1500, deadline=None)
@given(path_forests(), st.integers(2, MAXV))
def test_blue_is_target_path_matches_oracle(case, n):
    v, g = case
    blue = edge_set(g, BLUE)
    assert blue_is_target_path(g.blue, n) == is_single_path_on(blue, n)
    # also at the exact size, where the interesting cases are
    m = len(blue) + 1
    assert blue_is_target_path(g.blue, m) == is_single_path_on(blue, m)


@settings(max_examples=300, deadline=None)
@given(path_forests())
def test_blue_path_vertices_walks_the_path(case):
    _, g = case
    seq = blue_path_vertices(g.blue)
    blue = edge_set(g, BLUE)
    if seq is None:
        assert not is_single_path_on(blue, len(blue) + 1)
    else:
        assert {frozenset(e) for e in zip(seq, seq[1:])} == blue


def _shuffled(g: ColouredGraph, rng: random.Random) -> tuple[ColouredGraph, dict[int, int]]:
    verts = list(range(g.used_vertices))
    perm = verts[:]
    rng.shuffle(perm)
    f = dict(zip(verts, perm))
    return g.relabel(f), f


# ties in the degree sort are broken by label, so isomorphic twins need not
# share a key; what matters is that a shared key always comes with a witness
@settings(max_examples=1200, deadline=None)
@given(coloured_graphs(max_v=8), st.integers(0, 2**32 - 1), st.booleans())
def test_equal_keys_come_with_a_witnessed_isomorphism(case, seed, twin):
    _, g = case
    rng = random.Random(seed)
    if twin:
        h, _ = _shuffled(g, rng)
    else:
        # one edge recoloured: same shape, often the same degree sequence
        h = _flip_one(g, rng)
    v = max(g.used_vertices, h.used_vertices)
    kg, og = canonical_key(g, v)
    kh, oh = canonical_key(h, v)
    if kg == kh:
        f = {og[p]: oh[p] for p in range(v)}
        assert is_isomorphism(g, h, f)


def _flip_one(g: ColouredGraph, rng: random.Random) -> ColouredGraph:
    edges = g.edges(BLUE) + g.edges(RED)
    if not edges:
        return g
    a, b = rng.choice(edges)
    other = RED if g.colour_of(a, b) == BLUE else BLUE
    return g.remove(a, b).add(a, b, other)


def test_key_is_not_complete_but_never_unsound():
    # two non-isomorphic graphs may get different keys; equal keys always mean isomorphic
    rng = random.Random(7)
    seen = {}
    for _ in range(3000):
        v = rng.randint(3, 6)
        pairs = [(a, b) for a in range(v) for b in range(a + 1, v)]
        draw = [rng.random() for _ in pairs]
        g = ColouredGraph.from_edges(
            [e for e, r in zip(pairs, draw) if r < 0.2],
            [e for e, r in zip(pairs, draw) if 0.2 <= r < 0.4],
        )
        if g.used_vertices < 2:
            continue
        k, _ = canonical_key(g)
        if k in seen:
            assert find_isomorphism(seen[k], g) is not None
        else:
            seen[k] = g


def test_key_round_trip():
    g = ColouredGraph.from_edges([(0, 1), (2, 3)], [(1, 2), (0, 3)])
    key, order = canonical_key(g)
    back = key_to_graph(key)
    f = {order[p]: p for p in range(len(order))}
    assert back == g.relabel(f)


def test_add_remove_and_colour_queries():
    g = ColouredGraph.from_edges([(0, 1)], [(1, 2)])
    assert g.colour_of(1, 0) == BLUE and g.colour_of(2, 1) == RED and g.colour_of(0, 2) is None
    assert g.e_blue == 1 and g.e_red == 1 and g.used_vertices == 3
    h = g.add(0, 2, RED)
    assert h.e_total == 3 and g.e_total == 2
    assert h.remove(0, 2) == g
    with pytest.raises(ValueError):
        g.add(0, 1, RED)
    g.check_invariants()


def test_connectivity():
    assert is_connected(ColouredGraph.from_edges([(0, 1)], [(1, 2)]))
    assert not is_connected(ColouredGraph.from_edges([(0, 1)], [(2, 3)]))
