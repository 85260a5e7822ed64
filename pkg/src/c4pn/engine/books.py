"""Walking verified strategy books as a Builder for the small base games.

A :class:`BookIndex` keeps the raw lines of one book file together with the
indent of every line and the end of every subtree, so that a walk touches
only the lines on its own branch.  A :class:`BookWalker` carries a map from
the labels of the current book node to live board vertices; following a
back-reference re-maps the labels through the two degree-sort orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from ..certificate import HEX, _HEADER, _NODE
from ..graph import BLUE, RED, ColouredGraph, Edge, blue_is_target_path, canonical_key, has_c4_with
from ..rules import START_NAMES


class BookError(RuntimeError):
    """The live game left the book; an engine bug, never a fallback."""


def base_book_params(n: int) -> tuple[int, int]:
    """(v, e) of the RRC game whose book serves the RR base game on P_n."""
    return n + 1, 2 * n - 2


def book_name(n: int) -> str:
    v, e = base_book_params(n)
    return f"C4P{n}_{v}_{e}.txt"


@dataclass
class _Node:
    line: int
    depth: int
    red: tuple[Edge, ...]
    blue: tuple[Edge, ...]
    move: Edge
    ref: int | None

    def graph(self) -> ColouredGraph:
        return ColouredGraph.from_edges(self.blue, self.red)


def _pairs(text: str) -> tuple[Edge, ...]:
    return tuple((HEX.index(t[0]), HEX.index(t[1])) for t in text.split())


class BookIndex:
    """Line-addressed view of one book file (line numbers start at 1)."""

    def __init__(self, text: str):
        self.lines = text.splitlines()
        count = len(self.lines)
        depth = np.full(count + 2, -1, np.int32)
        self.roots: dict[str, int] = {}
        self.n = None
        for i, raw in enumerate(self.lines, 1):
            if raw.startswith("rc("):
                m = _HEADER.fullmatch(raw)
                if m is None:
                    raise BookError(f"line {i}: malformed header")
                n, start, _, _, rc = m.groups()
                self.n = int(n)
                if rc == "1":
                    self.roots[start] = i + 1
            else:
                depth[i] = len(raw) - len(raw.lstrip(" "))
        # end[i]: first line after the subtree rooted at line i
        end = np.full(count + 2, count + 1, np.int64)
        stack: list[int] = []
        for i in range(1, count + 1):
            d = depth[i]
            while stack and depth[stack[-1]] >= d:
                end[stack.pop()] = i
            if d >= 0:
                stack.append(i)
        self.depth = depth
        self.end = end

    @classmethod
    def load(cls, path: str | Path) -> BookIndex:
        return cls(Path(path).read_text())

    def node(self, line: int) -> _Node:
        if not 1 <= line <= len(self.lines) or self.depth[line] < 0:
            raise BookError(f"line {line} is not a strategy node")
        m = _NODE.fullmatch(self.lines[line - 1])
        if m is None:
            raise BookError(f"line {line}: malformed node")
        indent, red, blue, move, ref = m.groups()
        mv = (HEX.index(move[0]), HEX.index(move[1]))
        return _Node(line, len(indent), _pairs(red), _pairs(blue), mv, int(ref) if ref else None)

    def children(self, line: int) -> list[int]:
        d = self.depth[line]
        kids = []
        k = line + 1
        stop = self.end[line]
        while k < stop:
            if self.depth[k] == d + 1:
                kids.append(k)
            k = int(self.end[k])
        return kids


_INDEX_CACHE: dict[tuple[str, int, int], BookIndex] = {}


def load_index(path: Path) -> BookIndex:
    """Index of a book file, shared by every library that reads the same file."""
    st = path.stat()
    key = (str(path.resolve()), st.st_mtime_ns, st.st_size)
    if key not in _INDEX_CACHE:
        _INDEX_CACHE[key] = BookIndex.load(path)
    return _INDEX_CACHE[key]


class BookLibrary:
    """Book files of a directory, indexed lazily."""

    def __init__(self, books_dir: str | Path):
        self.dir = Path(books_dir)

    def index(self, n: int) -> BookIndex:
        path = self.dir / book_name(n)
        if not path.exists():
            raise BookError(f"no book for P{n} in {self.dir}")
        return load_index(path)

    def has(self, n: int, tag: str) -> bool:
        path = self.dir / book_name(n)
        if not path.exists():
            return False
        return START_NAMES[tag] in self.index(n).roots


class BookWalker:
    """Builder strategy read from a book, for RR on P_n from a start path.

    ``seq`` lists the live vertices that play book labels 0, 1, 2, ... of
    the start path.  ``fresh`` returns a brand-new live vertex.
    """

    def __init__(self, index: BookIndex, n: int, tag: str, seq: tuple[int, ...], fresh: Callable[[], int]):
        if index.n != n:
            raise BookError(f"book is for P{index.n}, not P{n}")
        name = START_NAMES[tag]
        if name not in index.roots:
            raise BookError(f"book for P{n} has no winning strategy from {name}")
        self.index, self.n, self.fresh = index, n, fresh
        self.line = index.roots[name]
        self.label = {i: x for i, x in enumerate(seq)}
        self.board = ColouredGraph.from_edges(
            [(i, i + 1) for i, c in enumerate(tag if tag != "empty" else "") if c == "b"],
            [(i, i + 1) for i, c in enumerate(tag if tag != "empty" else "") if c == "r"],
        )
        self.done = False
        self.steps = 0
        self._enter(self.line)

    def _enter(self, line: int) -> None:
        nd = self.index.node(line)
        if nd.graph() != self.board:
            raise BookError(f"line {line}: printed position differs from the walked one")
        while nd.ref is not None:
            target = self.index.node(nd.ref)
            there = target.graph()
            key_here, order_here = canonical_key(self.board)
            key_there, order_there = canonical_key(there)
            if key_here != key_there:
                raise BookError(f"line {nd.line}: reference l: {nd.ref} is not isomorphic")
            self.label = {order_there[p]: self.label[order_here[p]] for p in range(len(order_here))}
            self.board = there
            nd = target
        self.line = nd.line
        self._node = nd

    def live_board(self) -> ColouredGraph:
        return self.board.relabel(self.label)

    def next_move(self) -> tuple[Edge, Edge]:
        """(live edge, book edge) of the current node's move."""
        a, b = self._node.move
        used = self.board.used_vertices
        for x in sorted((a, b)):
            if x not in self.label:
                if x != used and not (used == 0 and x in (0, 1)):
                    raise BookError(f"line {self.line}: move uses unknown label {x}")
                self.label[x] = self.fresh()
        return (self.label[a], self.label[b]), (a, b)

    def observe(self, colour: str) -> bool:
        """Follow Painter's reply; True once the blue target path is complete."""
        a, b = self._node.move
        before = self.board
        after = before.add(a, b, colour)
        self.steps += 1
        blue_wins = blue_is_target_path(before.add(a, b, BLUE).blue, self.n)
        if colour == BLUE and blue_wins:
            self.board = after
            self.done = True
            return True
        if colour == RED and has_c4_with(before.red, a, b):
            raise BookError(f"line {self.line}: red reply closes a C4, illegal under RR")
        kids = self.index.children(self.line)
        pos = 0 if colour == BLUE or blue_wins else 1
        if pos >= len(kids):
            raise BookError(f"line {self.line}: no subtree for the {colour} reply")
        self.board = after
        self._enter(kids[pos])
        return False
