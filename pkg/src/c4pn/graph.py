"""Coloured graphs and the predicates shared by search, verification and play.

A :class:`ColouredGraph` stores one adjacency bitmask per vertex for each
colour.  Rows are Python ints, so the same type serves the 16-vertex solver
boards and the unbounded boards of the inductive engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

BLUE = "b"
RED = "r"
COLOURS = (BLUE, RED)

Edge = tuple[int, int]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _set(rows: tuple[int, ...], a: int, b: int, on: bool) -> tuple[int, ...]:
    size = max(len(rows), a + 1, b + 1)
    out = list(rows) + [0] * (size - len(rows))
    if on:
        out[a] |= 1 << b
        out[b] |= 1 << a
    else:
        out[a] &= ~(1 << b)
        out[b] &= ~(1 << a)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _row(rows: tuple[int, ...], a: int) -> int:
    return rows[a] if a < len(rows) else 0


@dataclass(frozen=True)
class ColouredGraph:
    """A game position: blue and red edge sets over integer vertex labels."""

    blue: tuple[int, ...] = ()
    red: tuple[int, ...] = ()
    e_blue: int = 0
    e_red: int = 0

    @classmethod
    def from_edges(cls, blue: Iterable[Edge] = (), red: Iterable[Edge] = ()) -> ColouredGraph:
        g = cls()
        for a, b in blue:
            g = g.add(a, b, BLUE)
        for a, b in red:
            g = g.add(a, b, RED)
        return g

    @property
    def e_total(self) -> int:
        return self.e_blue + self.e_red

    @property
    def used_vertices(self) -> int:
        """One past the largest vertex index touched by an edge."""
        return max(len(self.blue), len(self.red))

    def vertices(self) -> list[int]:
        return [x for x in range(self.used_vertices) if self.blue_row(x) | self.red_row(x)]

    def blue_row(self, a: int) -> int:
        return _row(self.blue, a)

    def red_row(self, a: int) -> int:
        return _row(self.red, a)

    def blue_degree(self, a: int) -> int:
        return self.blue_row(a).bit_count()

    def red_degree(self, a: int) -> int:
        return self.red_row(a).bit_count()

    def degree(self, a: int) -> int:
        return self.blue_degree(a) + self.red_degree(a)

    def colour_of(self, a: int, b: int) -> str | None:
        if self.blue_row(a) >> b & 1:
            return BLUE
        if self.red_row(a) >> b & 1:
            return RED
        return None

    def add(self, a: int, b: int, colour: str) -> ColouredGraph:
        if a == b or a < 0 or b < 0:
            raise ValueError(f"invalid edge {a}-{b}")
        if self.colour_of(a, b) is not None:
            raise ValueError(f"edge {a}-{b} is already coloured")
        if colour == BLUE:
            return ColouredGraph(_set(self.blue, a, b, True), self.red, self.e_blue + 1, self.e_red)
        if colour == RED:
            return ColouredGraph(self.blue, _set(self.red, a, b, True), self.e_blue, self.e_red + 1)
        raise ValueError(f"unknown colour {colour!r}")

    def remove(self, a: int, b: int) -> ColouredGraph:
        colour = self.colour_of(a, b)
        if colour == BLUE:
            return ColouredGraph(_set(self.blue, a, b, False), self.red, self.e_blue - 1, self.e_red)
        if colour == RED:
            return ColouredGraph(self.blue, _set(self.red, a, b, False), self.e_blue, self.e_red - 1)
        raise ValueError(f"edge {a}-{b} is not coloured")

    def edges(self, colour: str) -> list[Edge]:
        rows = self.blue if colour == BLUE else self.red
        return [(a, b) for a, row in enumerate(rows) for b in _bits(row >> (a + 1) << (a + 1))]

    def relabel(self, mapping: dict[int, int]) -> ColouredGraph:
        """Image of the graph under a vertex map defined on every used vertex."""
        return ColouredGraph.from_edges(
            [(mapping[a], mapping[b]) for a, b in self.edges(BLUE)],
            [(mapping[a], mapping[b]) for a, b in self.edges(RED)],
        )

    def check_invariants(self) -> None:
        for rows, count in ((self.blue, self.e_blue), (self.red, self.e_red)):
            for a, row in enumerate(rows):
                if row >> a & 1:
                    raise AssertionError(f"loop at {a}")
                for b in _bits(row):
                    if not _row(rows, b) >> a & 1:
                        raise AssertionError(f"asymmetric edge {a}-{b}")
            if sum(r.bit_count() for r in rows) != 2 * count:
                raise AssertionError("edge count mismatch")
        for a in range(self.used_vertices):
            if self.blue_row(a) & self.red_row(a):
                raise AssertionError(f"edge at {a} carries both colours")


def has_c4_with(red: tuple[int, ...], a: int, b: int) -> bool:
    """Whether adding red a-b to a C4-free red graph closes a 4-cycle.

    Such a cycle runs a-b-k-w-a, so it exists iff some red neighbour k of b
    (other than a) is adjacent to a red neighbour w of a (other than b).
    """
    na = _row(red, a) & ~(1 << b)
    for k in _bits(_row(red, b) & ~(1 << a)):
        if _row(red, k) & na & ~(1 << b):
            return True
    return False


def _walk_end(blue: tuple[int, ...], start: int) -> tuple[int, int]:
    """(far end, edge count) of the blue path walked from an endpoint.

    The walk stops early at a vertex of blue degree above 2 or on a revisit,
    so it also terminates on graphs that are not unions of paths.
    """
    prev, cur, length = -1, start, 0
    seen = 1 << start
    while True:
        row = _row(blue, cur)
        if row.bit_count() > 2:
            return cur, length
        nxt = row & ~(1 << prev if prev >= 0 else 0)
        if not nxt:
            return cur, length
        prev, cur = cur, (nxt & -nxt).bit_length() - 1
        length += 1
        if seen >> cur & 1:
            return cur, length
        seen |= 1 << cur


def blue_extends_to_paths(blue: tuple[int, ...], a: int, b: int) -> bool:
    """Whether blue plus a-b is still a vertex-disjoint union of paths."""
    da, db = _row(blue, a).bit_count(), _row(blue, b).bit_count()
    if da > 1 or db > 1:
        return False
    if da == 0 or db == 0:
        return True
    return _walk_end(blue, a)[0] != b


def blue_is_target_path(blue: tuple[int, ...], n: int) -> bool:
    """Whether the blue edges form exactly one path on n vertices."""
    edges = sum(r.bit_count() for r in blue) // 2
    if edges != n - 1 or n < 2:
        return False
    if any(r.bit_count() > 2 for r in blue):
        return False
    for x, row in enumerate(blue):
        if row.bit_count() == 1:
            return _walk_end(blue, x)[1] == edges
    return False


def blue_path_vertices(blue: tuple[int, ...]) -> list[int] | None:
    """Vertex sequence of the blue graph if it is a single path, else None."""
    edges = sum(r.bit_count() for r in blue) // 2
    if edges == 0 or any(r.bit_count() > 2 for r in blue):
        return None
    for x, row in enumerate(blue):
        if row.bit_count() == 1:
            seq = [x]
            prev, cur = -1, x
            while True:
                nxt = _row(blue, cur) & ~(1 << prev if prev >= 0 else 0)
                if not nxt:
                    break
                prev, cur = cur, (nxt & -nxt).bit_length() - 1
                seq.append(cur)
            return seq if len(seq) - 1 == edges else None
    return None


# Bit layout shared with the compiled kernel: sorted pair (p, q), p > q, has
# index p*(p-1)/2 + q; blue sets bit 2*index, red sets bit 2*index + 1.

def _pair_bit(p: int, q: int, colour: str) -> int:
    idx = 2 * (p * (p - 1) // 2 + q)
    return 1 << (idx + (colour == RED))


def sort_order(g: ColouredGraph, v: int) -> list[int]:
    """Board labels in sorted order: descending (blue degree, red degree), then index."""
    return sorted(range(v), key=lambda x: (-g.blue_degree(x), -g.red_degree(x), x))


def canonical_key(g: ColouredGraph, v: int | None = None) -> tuple[int, list[int]]:
    """Packed key of the degree-sorted position and the sort order.

    ``order[p]`` is the board label placed at sorted position ``p``.
    Equal keys mean equal sorted matrices, so the two positions are
    colour-preserving isomorphic through their orders.
    """
    if v is None:
        v = g.used_vertices
    order = sort_order(g, v)
    inv = {x: p for p, x in enumerate(order)}
    key = 0
    for colour in COLOURS:
        for a, b in g.edges(colour):
            pa, pb = inv[a], inv[b]
            key |= _pair_bit(max(pa, pb), min(pa, pb), colour)
    return key, order


def key_from_words(words: Iterable[int]) -> int:
    return sum(int(w) << (64 * i) for i, w in enumerate(words))


def key_to_graph(key: int) -> ColouredGraph:
    """The sorted position a key encodes."""
    blue, red = [], []
    idx = 0
    while key >> idx:
        if key >> idx & 1:
            pair = idx // 2
            p = int(((8 * pair + 1) ** 0.5 + 1) / 2)
            while p * (p - 1) // 2 > pair:
                p -= 1
            while (p + 1) * p // 2 <= pair:
                p += 1
            q = pair - p * (p - 1) // 2
            (red if idx & 1 else blue).append((p, q))
        idx += 1
    return ColouredGraph.from_edges(blue, red)


def is_connected(g: ColouredGraph) -> bool:
    verts = g.vertices()
    if not verts:
        return True
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        x = stack.pop()
        for y in _bits(g.blue_row(x) | g.red_row(x)):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


def red_path3(red: tuple[int, ...], a: int, b: int) -> bool:
    """Whether a red path with three edges joins a and b (so red a-b closes a C4)."""
    return has_c4_with(red, a, b)
