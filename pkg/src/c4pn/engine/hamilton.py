"""Hamilton paths in the forcing graph of a red butterfly.

For a red (s,s)-butterfly with centres u0, u1, arms u0-u2-u4 and
u1-u3-u5, wing x_i at u0 and wing y_i at u1, two non-central vertices are
joined by a red path with three edges exactly when they are adjacent in
K_{s+2,s+2} minus the path u2-u4-u5-u3.  The parts are
V1 = {x_i, u2, u5} and V2 = {y_i, u3, u4}.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Hashable, Mapping, Sequence

DELETED = frozenset({frozenset(("u2", "u4")), frozenset(("u4", "u5")), frozenset(("u5", "u3"))})


class NoHamiltonPath(ValueError):
    pass


def lacing_parts(s: int) -> tuple[list[str], list[str]]:
    v1 = [f"x{i}" for i in range(s)] + ["u2", "u5"]
    v2 = [f"y{i}" for i in range(s)] + ["u3", "u4"]
    return v1, v2


def lacing_graph(s: int) -> dict[str, set[str]]:
    """Adjacency of K_{s+2,s+2} minus u2u4, u4u5, u5u3."""
    v1, v2 = lacing_parts(s)
    adj: dict[str, set[str]] = {w: set() for w in v1 + v2}
    for a in v1:
        for b in v2:
            if frozenset((a, b)) not in DELETED:
                adj[a].add(b)
                adj[b].add(a)
    return adj


def find_hamilton_path(
    adj: Mapping[Hashable, set],
    start: Hashable,
    end: Hashable,
    required: tuple[Hashable, Hashable] | None = None,
) -> list:
    """Backtracking search, most constrained neighbour first.

    ``required`` names an edge the path must use.
    """
    total = len(adj)
    if start not in adj or end not in adj or start == end:
        raise NoHamiltonPath(f"bad endpoints {start!r}, {end!r}")
    partner: dict = {}
    if required is not None:
        a, b = required
        if b not in adj[a]:
            raise NoHamiltonPath("required edge is not in the graph")
        partner = {a: b, b: a}
    path = [start]
    seen = {start}
    free_deg = {w: len(adj[w]) for w in adj}
    for w in adj[start]:
        free_deg[w] -= 1

    def dfs(cur) -> bool:
        if len(path) == total:
            return cur == end
        p = partner.get(cur)
        if p is not None and p not in seen:
            options = [p]
        else:
            options = [w for w in adj[cur] if w not in seen]
        if len(path) < total - 1:
            options = [w for w in options if w != end]
            options.sort(key=lambda w: (free_deg[w], str(w)))
        for w in options:
            q = partner.get(w)
            if q is not None and q in seen and q != cur:
                continue
            seen.add(w)
            path.append(w)
            for z in adj[w]:
                free_deg[z] -= 1
            if _feasible(adj, seen, free_deg, end, w) and dfs(w):
                return True
            for z in adj[w]:
                free_deg[z] += 1
            path.pop()
            seen.discard(w)
        return False

    if not dfs(start):
        raise NoHamiltonPath(f"no Hamilton path from {start!r} to {end!r}")
    return path


def _feasible(adj, seen, free_deg, end, cur) -> bool:
    # every unvisited vertex still needs a way in and out
    for w in adj:
        if w in seen:
            continue
        need = 1 if w == end else 2
        links = free_deg[w] + (1 if cur in adj[w] else 0)
        if links < need:
            return False
    return True


@lru_cache(maxsize=None)
def hamilton_path(s: int, w1: str, w2: str, required: tuple[str, str] | None = None) -> tuple[str, ...]:
    """A Hamilton path of K_{s+2,s+2} minus the deleted P4, from w1 to w2."""
    v1, v2 = lacing_parts(s)
    if s < 1:
        raise NoHamiltonPath("s must be positive")
    if not ((w1 in v1 and w2 in v2) or (w1 in v2 and w2 in v1)):
        raise NoHamiltonPath("endpoints must lie in different parts")
    if s == 1 and {w1, w2} != {"u4", "u5"}:
        raise NoHamiltonPath("for s = 1 only the ends u4, u5 are laceable")
    return tuple(find_hamilton_path(lacing_graph(s), w1, w2, required))


def check_lacing_path(s: int, path: Sequence[str], w1: str, w2: str) -> None:
    """Independent check: ends, coverage, alternation, no deleted or repeated edge."""
    v1, v2 = lacing_parts(s)
    side = {w: 0 for w in v1}
    side.update({w: 1 for w in v2})
    if list(path[:1]) != [w1] or list(path[-1:]) != [w2]:
        raise AssertionError("wrong ends")
    if sorted(path) != sorted(v1 + v2):
        raise AssertionError("path does not visit every vertex exactly once")
    for a, b in zip(path, path[1:]):
        if side[a] == side[b]:
            raise AssertionError(f"{a}-{b} stays inside one part")
        if frozenset((a, b)) in DELETED:
            raise AssertionError(f"{a}-{b} is a deleted edge")
