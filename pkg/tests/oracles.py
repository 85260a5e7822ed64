"""Brute-force reference implementations, written without any bit tricks."""

from __future__ import annotations

from itertools import combinations, permutations

from c4pn.graph import BLUE, RED, ColouredGraph


def edge_set(g: ColouredGraph, colour: str) -> set[frozenset]:
    return {frozenset(e) for e in g.edges(colour)}


def closes_c4(red: set[frozenset], a: int, b: int, v: int) -> bool:
    """Does red a-b lie on a 4-cycle a-b-k-w once it is added?"""
    for k in range(v):
        for w in range(v):
            if len({a, b, k, w}) < 4:
                continue
            if {frozenset((b, k)), frozenset((k, w)), frozenset((w, a))} <= red:
                return True
    return False


def _components(edges: set[frozenset]) -> list[set[int]]:
    verts = {x for e in edges for x in e}
    comps = []
    while verts:
        seed = verts.pop()
        comp, todo = {seed}, [seed]
        while todo:
            x = todo.pop()
            for e in edges:
                if x in e:
                    (y,) = e - {x}
                    if y not in comp:
                        comp.add(y)
                        todo.append(y)
        verts -= comp
        comps.append(comp)
    return comps


def is_union_of_paths(edges: set[frozenset]) -> bool:
    deg: dict[int, int] = {}
    for e in edges:
        for x in e:
            deg[x] = deg.get(x, 0) + 1
    if any(d > 2 for d in deg.values()):
        return False
    # a component is a path iff it has one edge fewer than vertices
    for comp in _components(edges):
        inside = sum(1 for e in edges if e <= comp)
        if inside != len(comp) - 1:
            return False
    return True


def is_single_path_on(edges: set[frozenset], n: int) -> bool:
    if len(edges) != n - 1 or n < 2:
        return False
    verts = {x for e in edges for x in e}
    return len(verts) == n and is_union_of_paths(edges) and len(_components(edges)) == 1


def find_isomorphism(g: ColouredGraph, h: ColouredGraph) -> dict[int, int] | None:
    """Colour-preserving bijection of used vertices, by trying every permutation."""
    vg = g.vertices()
    vh = h.vertices()
    if len(vg) != len(vh):
        return None
    bg, rg = edge_set(g, BLUE), edge_set(g, RED)
    bh, rh = edge_set(h, BLUE), edge_set(h, RED)
    if len(bg) != len(bh) or len(rg) != len(rh):
        return None
    for perm in permutations(vh):
        f = dict(zip(vg, perm))
        if {frozenset(f[x] for x in e) for e in bg} == bh and {frozenset(f[x] for x in e) for e in rg} == rh:
            return f
    return None


def is_isomorphism(g: ColouredGraph, h: ColouredGraph, f: dict[int, int]) -> bool:
    for colour in (BLUE, RED):
        mapped = {frozenset(f[x] for x in e) for e in edge_set(g, colour)}
        if mapped != edge_set(h, colour):
            return False
    return True


def all_pairs(v: int):
    return combinations(range(v), 2)


def reference_rc(spec) -> int:
    """Plain minimax over the game rules, memoised on exact positions."""
    from functools import lru_cache

    from c4pn.rules import TerminalStatus, legal_builder_moves, terminal_status

    @lru_cache(maxsize=None)
    def builder_wins(pos: ColouredGraph) -> bool:
        if pos.e_total >= spec.e:
            return False
        for m in legal_builder_moves(pos, spec):
            if all(_reply_wins(pos, m, c) for c in (BLUE, RED)):
                return True
        return False

    def _reply_wins(pos, m, c):
        after = pos.add(*m, c)
        status = terminal_status(after, spec, m, c)
        if status is not TerminalStatus.ONGOING:
            return status.builder_won
        return builder_wins(after)

    return int(builder_wins(spec.start.graph()))
