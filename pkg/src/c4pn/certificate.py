"""Strategy books: emission, parsing and independent verification.

A book file holds the games of one (n, v, e) series entry.  Each game opens
with a header ``rc(C4,P<n>,<start>,<v>,<e>)=<0|1>``; a winning game is
followed by a pre-order dump of Builder's strategy, one position per line::

    <indent>r: <red edges> b: <blue edges> m: <move>[ l: <line>]

The indent is the number of coloured edges.  Edges and the move are two
uppercase hex digits.  After a node come the subtree for Painter's blue
reply and then the subtree for the red reply, each present only when that
reply does not end the game.  A node whose position (up to the degree sort)
was printed before is not expanded; it ends in ``l: k`` naming that line.
Line numbers count every line of the file from 1, headers included.

The verifier replays a book using only :mod:`c4pn.graph` and
:mod:`c4pn.rules`; it never touches the search tables.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import IO, Iterator

import numpy as np

from .graph import (
    BLUE,
    RED,
    ColouredGraph,
    Edge,
    blue_is_target_path,
    canonical_key,
    has_c4_with,
)
from .rules import GameSpec, StartPosition, is_legal_builder_move

HEX = "0123456789ABCDEF"


class InternalError(RuntimeError):
    """A search table contradicts itself; never expected."""


# ---------------------------------------------------------------- emission


def _row_edges(rows: np.ndarray, v: int) -> str:
    out = []
    for a in range(v):
        row = int(rows[a]) >> (a + 1)
        b = a + 1
        while row:
            if row & 1:
                out.append(HEX[a] + HEX[b] + " ")
            row >>= 1
            b += 1
    return "".join(out)


class BookWriter:
    """Writes the games of one book file, keeping the shared line counter."""

    def __init__(self, fh: IO[str]):
        self.fh = fh
        self.line_number = 0
        self.book_pos: dict[tuple[int, int, int, int], int] = {}

    def write_game(self, spec: GameSpec, rc: int, solver) -> None:
        self.fh.write(f"{spec.header}={rc}\n")
        self.line_number += 1
        if rc:
            from .solver import to_arrays

            start = spec.start.graph()
            blue, red = to_arrays(start)
            self._solver = solver
            self._node(blue, red, start.used_vertices, start.e_total, start.e_blue, start.e_red)

    def _node(self, blue: np.ndarray, red: np.ndarray, v: int, depth: int, eb: int, er: int) -> None:
        from .solver import _kernel as K

        solver = self._solver
        table = solver.table._t
        entry, order, k0, k1, k2, k3 = K.probe(table, blue, red, v)
        if entry < 0:
            st = solver._st
            st.eb, st.er = eb, er
            K.construct(st, blue, red, v)
            entry, order, k0, k1, k2, k3 = K.probe(table, blue, red, v)
        if entry <= 0:
            raise InternalError("no winning Builder move stored for a book position")
        i, j = int(order[entry >> 8]), int(order[entry & 255])
        if i >= 16 or j >= 16:
            raise ValueError("vertex labels above F cannot be written")
        text = " " * depth + "r: " + _row_edges(red, v) + "b: " + _row_edges(blue, v) + "m: " + HEX[i] + HEX[j]
        key = (int(k0), int(k1), int(k2), int(k3))
        self.line_number += 1
        seen = self.book_pos.get(key)
        if seen is not None:
            self.fh.write(f"{text} l: {seen}\n")
            return
        self.fh.write(text + "\n")
        self.book_pos[key] = self.line_number
        w = max(v, i + 1, j + 1)
        bit_i, bit_j = np.int64(1) << np.int64(i), np.int64(1) << np.int64(j)
        blue[i] |= bit_j
        blue[j] |= bit_i
        if not K.is_target_path(blue, eb + 1, solver.n, solver.v):
            self._node(blue, red, w, depth + 1, eb + 1, er)
        blue[i] &= ~bit_j
        blue[j] &= ~bit_i
        red[i] |= bit_j
        red[j] |= bit_i
        if not K.has_c4(red, i, j):
            self._node(blue, red, w, depth + 1, eb, er + 1)
        red[i] &= ~bit_j
        red[j] &= ~bit_i


def emit_book(game_or_spec, solver=None, hints=None) -> str:
    """Book text for a game (all starts) or for one spec, solving as needed."""
    import io

    from .rules import SeriesGame
    from .solver import Solver

    if isinstance(game_or_spec, GameSpec):
        spec = game_or_spec
        specs = [spec]
        n, v, e = spec.n, spec.v, spec.e
    else:
        specs = game_or_spec.specs()
        n, v, e = game_or_spec.n, game_or_spec.v, game_or_spec.e
    if solver is None:
        solver = Solver(n, v, e, hints)
    buf = io.StringIO()
    writer = BookWriter(buf)
    for spec in specs:
        rc = int(solver.solve_builder(spec.start.graph()))
        writer.write_game(spec, rc, solver)
    return buf.getvalue()


# ----------------------------------------------------------------- parsing


class BookSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


_HEADER = re.compile(r"rc\(C4,P(\d+),([A-Za-z0-9_\-∅]+),(\d+),(\d+)\)=([01])")
_NODE = re.compile(r"( *)r: ((?:\S\S )*)b: ((?:\S\S )*)m: (\S\S)(?: l: (\d+))?")


@dataclass
class BookNode:
    line: int
    depth: int
    red: tuple[Edge, ...]
    blue: tuple[Edge, ...]
    move: Edge
    ref: int | None = None

    def graph(self) -> ColouredGraph:
        return ColouredGraph.from_edges(self.blue, self.red)


@dataclass
class BookGame:
    line: int
    n: int
    start: str
    v: int
    e: int
    rc: int
    nodes: list[BookNode] = field(default_factory=list)


@dataclass
class StrategyBook:
    games: list[BookGame] = field(default_factory=list)
    lines: dict[int, BookNode] = field(default_factory=dict)

    def game_for(self, spec: GameSpec) -> BookGame | None:
        for g in self.games:
            if (g.n, g.start, g.v, g.e) == (spec.n, spec.start.name, spec.v, spec.e):
                return g
        return None


def _pair(tok: str, lineno: int) -> Edge:
    try:
        return HEX.index(tok[0]), HEX.index(tok[1])
    except ValueError:
        raise BookSyntaxError(lineno, f"malformed hex pair {tok!r}") from None


def parse_book(text: str) -> StrategyBook:
    book = StrategyBook()
    game: BookGame | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.startswith("rc("):
            m = _HEADER.fullmatch(raw)
            if not m:
                raise BookSyntaxError(lineno, "malformed header")
            n, start, v, e, rc = m.groups()
            game = BookGame(lineno, int(n), start, int(v), int(e), int(rc))
            book.games.append(game)
            continue
        m = _NODE.fullmatch(raw)
        if not m:
            raise BookSyntaxError(lineno, "unrecognised line")
        if game is None:
            raise BookSyntaxError(lineno, "node before any header")
        indent, red_s, blue_s, move_s, ref_s = m.groups()
        red = tuple(_pair(t, lineno) for t in red_s.split())
        blue = tuple(_pair(t, lineno) for t in blue_s.split())
        for a, b in red + blue:
            if a >= b:
                raise BookSyntaxError(lineno, f"edge {HEX[a]}{HEX[b]} is not in ascending order")
        if len(indent) != len(red) + len(blue):
            raise BookSyntaxError(lineno, "indentation does not match the edge count")
        ref = int(ref_s) if ref_s is not None else None
        if ref is not None and ref >= lineno:
            raise BookSyntaxError(lineno, f"back-reference to later line {ref}")
        node = BookNode(lineno, len(indent), red, blue, _pair(move_s, lineno), ref)
        game.nodes.append(node)
        book.lines[lineno] = node
    return book


# ------------------------------------------------------------ verification


class Reason(str, enum.Enum):
    ILLEGAL_MOVE = "illegal move"
    MISSING_CHILD = "missing child"
    BUDGET_EXCEEDED = "budget exceeded"
    TERMINAL_MISMATCH = "terminal mismatch"
    DANGLING_BACK_REFERENCE = "dangling back-reference"
    ISOMORPHISM_MISMATCH = "isomorphism mismatch"
    HEADER_MISMATCH = "header mismatch"


@dataclass
class VerificationReport:
    accepted: bool
    line: int | None = None
    reason: Reason | None = None
    detail: str = ""
    nodes_checked: int = 0

    def __str__(self) -> str:
        if self.accepted:
            return f"accepted ({self.nodes_checked} nodes)"
        where = f"line {self.line}" if self.line is not None else "book"
        return f"rejected at {where}: {self.reason.value}" + (f" ({self.detail})" if self.detail else "")


class _Reject(Exception):
    def __init__(self, line: int | None, reason: Reason, detail: str = ""):
        self.line, self.reason, self.detail = line, reason, detail


def _children(nodes: list[BookNode], idx: int) -> tuple[list[int], int]:
    """Indices of the direct children of nodes[idx] and the end of its subtree."""
    d = nodes[idx].depth
    kids = []
    k = idx + 1
    while k < len(nodes) and nodes[k].depth > d:
        if nodes[k].depth == d + 1:
            kids.append(k)
        k += 1
    return kids, k


class _Verifier:
    def __init__(self, book: StrategyBook, spec: GameSpec):
        self.book = book
        self.spec = spec
        self.done: set[int] = set()
        self.checked = 0
        # line -> (game, index within game) for expandable nodes
        self.where: dict[int, tuple[BookGame, int]] = {}
        for g in book.games:
            for k, nd in enumerate(g.nodes):
                self.where[nd.line] = (g, k)

    def run(self, game: BookGame) -> None:
        if not game.nodes:
            raise _Reject(game.line, Reason.MISSING_CHILD, "winning header without a strategy")
        start = self.spec.start.graph()
        first = game.nodes[0]
        if first.depth != start.e_total:
            raise _Reject(first.line, Reason.MISSING_CHILD, "root does not follow its header")
        self._node(game, 0, start)
        # every node line of this game must belong to the root's subtree
        _, end = _children(game.nodes, 0)
        if end != len(game.nodes):
            raise _Reject(game.nodes[end].line, Reason.TERMINAL_MISMATCH, "line outside the strategy tree")

    def _node(self, game: BookGame, idx: int, pos: ColouredGraph) -> None:
        nd = game.nodes[idx]
        spec = self.spec
        if nd.graph() != pos:
            raise _Reject(nd.line, Reason.MISSING_CHILD, "printed position differs from the replayed one")
        if pos.e_total >= spec.e:
            raise _Reject(nd.line, Reason.BUDGET_EXCEEDED, f"{pos.e_total} edges already coloured")
        self.checked += 1
        if nd.ref is not None:
            self._back_reference(game, idx, pos)
            return
        a, b = nd.move
        if not is_legal_builder_move(pos, spec, (a, b)):
            raise _Reject(nd.line, Reason.ILLEGAL_MOVE, f"{HEX[a]}{HEX[b]}")
        kids, _ = _children(game.nodes, idx)
        queue = list(kids)
        for colour in (BLUE, RED):
            after = pos.add(a, b, colour)
            if colour == BLUE and blue_is_target_path(after.blue, spec.n):
                continue
            if colour == RED and has_c4_with(pos.red, a, b):
                continue
            if after.e_total >= spec.e:
                raise _Reject(nd.line, Reason.BUDGET_EXCEEDED, f"{'blue' if colour == BLUE else 'red'} reply exhausts the budget")
            if not queue:
                raise _Reject(nd.line, Reason.MISSING_CHILD, f"no subtree for the {'blue' if colour == BLUE else 'red'} reply")
            self._node(game, queue.pop(0), after)
        if queue:
            raise _Reject(game.nodes[queue[0]].line, Reason.TERMINAL_MISMATCH, "subtree after a game-ending reply")
        self.done.add(nd.line)

    def _back_reference(self, game: BookGame, idx: int, pos: ColouredGraph) -> None:
        nd = game.nodes[idx]
        kids, _ = _children(game.nodes, idx)
        if kids:
            raise _Reject(game.nodes[kids[0]].line, Reason.TERMINAL_MISMATCH, "back-reference with a subtree")
        target = self.where.get(nd.ref)
        if target is None or target[0].nodes[target[1]].ref is not None:
            raise _Reject(nd.line, Reason.DANGLING_BACK_REFERENCE, f"l: {nd.ref}")
        tgame, tidx = target
        tnode = tgame.nodes[tidx]
        if (tgame.n, tgame.v, tgame.e) != (game.n, game.v, game.e):
            raise _Reject(nd.line, Reason.DANGLING_BACK_REFERENCE, "target belongs to another game")
        tpos = tnode.graph()
        key_here, order_here = canonical_key(pos)
        key_there, order_there = canonical_key(tpos)
        if key_here != key_there:
            raise _Reject(nd.line, Reason.ISOMORPHISM_MISMATCH, f"l: {nd.ref}")
        # the printed move must be the target's move carried across the isomorphism
        fwd = {order_there[p]: order_here[p] for p in range(len(order_there))}
        va, vb = tnode.move
        w_there, w_here = tpos.used_vertices, pos.used_vertices
        mapped = {fwd.get(va, va - w_there + w_here), fwd.get(vb, vb - w_there + w_here)}
        if mapped != set(nd.move):
            raise _Reject(nd.line, Reason.ISOMORPHISM_MISMATCH, "move differs from the referenced line's")
        if tnode.line not in self.done:
            if tnode.line in self._active:
                raise _Reject(nd.line, Reason.DANGLING_BACK_REFERENCE, "cyclic reference")
            self._active.add(tnode.line)
            self._node(tgame, tidx, tpos)
            self._active.discard(tnode.line)

    _active: set[int] = set()


def verify_book(book: StrategyBook, spec: GameSpec) -> VerificationReport:
    """Replay the strategy for ``spec`` and report the first failure, if any."""
    game = book.game_for(spec)
    if game is None:
        return VerificationReport(False, None, Reason.HEADER_MISMATCH, f"no header for {spec.header}")
    if game.rc != 1:
        return VerificationReport(False, game.line, Reason.HEADER_MISMATCH, "header claims no win")
    ver = _Verifier(book, spec)
    ver._active = set()
    try:
        ver.run(game)
    except _Reject as rej:
        return VerificationReport(False, rej.line, rej.reason, rej.detail, ver.checked)
    except RecursionError:
        return VerificationReport(False, None, Reason.DANGLING_BACK_REFERENCE, "reference chain too deep", ver.checked)
    return VerificationReport(True, nodes_checked=ver.checked)


def spec_for_game(game: BookGame) -> GameSpec:
    tag = {"b-path": "b", "br-path": "br", "brr-path": "brr", "brb-path": "brb", "brrb-path": "brrb"}.get(game.start, game.start)
    return GameSpec(game.n, game.v, game.e, StartPosition.named(tag))


def verify_text(text: str) -> list[tuple[BookGame, VerificationReport]]:
    """Verify every winning game of a book file against its own header."""
    book = parse_book(text)
    return [(g, verify_book(book, spec_for_game(g))) for g in book.games if g.rc == 1]


# --------------------------------------------------------------- mutations


def _fmt_node(nd: BookNode, move: Edge | None = None, ref: int | None | str = "keep") -> str:
    move = nd.move if move is None else move
    ref = nd.ref if ref == "keep" else ref
    text = (
        " " * nd.depth
        + "r: " + "".join(HEX[a] + HEX[b] + " " for a, b in nd.red)
        + "b: " + "".join(HEX[a] + HEX[b] + " " for a, b in nd.blue)
        + "m: " + HEX[move[0]] + HEX[move[1]]
    )
    return text + (f" l: {ref}" if ref is not None else "")


@dataclass
class Mutation:
    kind: str
    line: int
    text: str


def single_node_mutations(text: str, v: int) -> Iterator[Mutation]:
    """Every single-node corruption of a book: changed move, deleted line, retargeted reference.

    A changed move is any other unordered pair of labels below ``v``.
    """
    lines = text.splitlines()
    book = parse_book(text)
    node_lines = sorted(book.lines)
    for ln in node_lines:
        nd = book.lines[ln]
        here = set(nd.move)
        for a in range(v):
            for b in range(a + 1, v):
                if {a, b} == here:
                    continue
                out = list(lines)
                out[ln - 1] = _fmt_node(nd, move=(a, b))
                yield Mutation("move", ln, "\n".join(out) + "\n")
        out = lines[: ln - 1] + lines[ln:]
        yield Mutation("delete", ln, "\n".join(out) + "\n")
        if nd.ref is not None:
            for other in node_lines:
                if other < ln and other != nd.ref:
                    out = list(lines)
                    out[ln - 1] = _fmt_node(nd, ref=other)
                    yield Mutation("retarget", ln, "\n".join(out) + "\n")
