"""The inductive Builder for RR(C4, P_n, H).

Play is written as generators: a plan yields :class:`Move` records and is
sent Painter's colour back.  Sub-plans compose with ``yield from``, so the
Stage-1 scripts, the butterfly forcing plans, the endgames, the residual
games after a contraction and the base-case books all read as straight-line
code.  :class:`InductiveBuilder` drives the generator one move at a time.

Vertices are plain integers drawn from a counter that only grows, so a
contracted board keeps the labels of the board it came from.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Generator

from ..graph import BLUE, RED, ColouredGraph, Edge, blue_is_target_path, has_c4_with
from ..rules import GameSpec, StartPosition
from .books import BookLibrary, BookWalker
from .butterfly import Butterfly, MaloCase, butterfly_force_plan, malo_dispatch
from .scripts import START_ENTRY, STAGE1_EDGES, T, Contract, Force, Goto, Residual, Select, Step

BASE_MAX = 13


class Phase(str, enum.Enum):
    STAGE1 = "Stage1"
    STAGE2 = "Stage2"
    STAGE3 = "Stage3"
    SCRIPT = "BlueCaseScript"
    FORCE = "ButterflyForce"
    MALO = "MaloEndgame"
    BOOK = "BaseCaseBook"
    DONE = "Done"


class EngineError(RuntimeError):
    """An engine invariant failed; the strategy is never allowed to guess."""


class ContractionError(EngineError):
    pass


@dataclass(frozen=True)
class Move:
    edge: Edge
    phase: Phase
    forced: bool = False


@dataclass
class ContractionFrame:
    path: tuple[int, ...]
    virtual: Edge
    interior: frozenset[int]
    m: int
    board: ColouredGraph
    # kept vertices keep their labels, so the translation is the identity
    translation: dict[int, int] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.interior)


def contraction_value(board: ColouredGraph, path: tuple[int, ...]) -> int:
    """m = |N_H(A)| + delta_H(ends) for the interior A of ``path``."""
    inner = set(path[1:-1])
    touching = set()
    for colour in (BLUE, RED):
        for a, b in board.edges(colour):
            if a in inner or b in inner:
                touching.add((a, b))
    x, y = path[0], path[-1]
    return len(touching) + (board.colour_of(x, y) is not None)


def contraction_push(board: ColouredGraph, path: tuple[int, ...]) -> ContractionFrame:
    """Check the contraction hypotheses and build the contracted board."""
    path = tuple(path)
    if len(path) < 3 or len(set(path)) != len(path):
        raise ContractionError(f"path {path} has no interior or repeats a vertex")
    for a, b in zip(path, path[1:]):
        if board.colour_of(a, b) != BLUE:
            raise ContractionError(f"path edge {a}-{b} is not blue")
    x, y = path[0], path[-1]
    if board.colour_of(x, y) == BLUE:
        raise ContractionError(f"virtual edge {x}-{y} is already blue")
    inner = frozenset(path[1:-1])
    on_path = {frozenset(e) for e in zip(path, path[1:])}
    for a, b in board.edges(BLUE):
        if (a in inner or b in inner) and frozenset((a, b)) not in on_path:
            raise ContractionError(f"blue edge {a}-{b} leaves the path interior")
    m = contraction_value(board, path)
    k = len(inner)
    if m > 2 * k + 1:
        raise ContractionError(f"m = {m} exceeds 2k+1 = {2 * k + 1}")
    keep = lambda e: e[0] not in inner and e[1] not in inner and set(e) != {x, y}  # noqa: E731
    contracted = ColouredGraph.from_edges(
        [e for e in board.edges(BLUE) if keep(e)] + [(min(x, y), max(x, y))],
        [e for e in board.edges(RED) if keep(e)],
    )
    kept = {v for e in contracted.edges(BLUE) + contracted.edges(RED) for v in e}
    return ContractionFrame(path, (x, y), inner, m, contracted, {v: v for v in kept})


@dataclass(frozen=True)
class ContractionRecord:
    where: str
    path: tuple[int, ...]
    k: int
    m: int
    expected_m: int | None
    n_before: int
    n_after: int
    round: int


@dataclass
class EngineState:
    n: int
    phase: Phase = Phase.STAGE1
    roles: dict[int, str] = field(default_factory=dict)
    cursor: str = ""
    frames: list[ContractionFrame] = field(default_factory=list)
    budget: int = 0
    board: ColouredGraph = field(default_factory=ColouredGraph)
    next_vertex: int = 0
    rounds: int = 0
    first_blue: int | None = None
    contractions: list[ContractionRecord] = field(default_factory=list)
    endgames: list[dict] = field(default_factory=list)
    won_by_c4: bool = False

    @property
    def top(self) -> ColouredGraph:
        return self.frames[-1].board if self.frames else self.board


def _path_graph(tag: str, seq: tuple[int, ...]) -> ColouredGraph:
    cols = "" if tag == "empty" else tag
    if len(seq) != len(cols) + 1 and cols:
        raise EngineError(f"start {tag} needs {len(cols) + 1} vertices")
    blue = [(seq[i], seq[i + 1]) for i, c in enumerate(cols) if c == "b"]
    red = [(seq[i], seq[i + 1]) for i, c in enumerate(cols) if c == "r"]
    return ColouredGraph.from_edges(blue, red)


def blue_walk(board: ColouredGraph, start: int) -> tuple[int, ...]:
    """The blue path read from one of its ends."""
    if board.blue_degree(start) != 1:
        raise EngineError(f"{start} is not the end of a blue path")
    seq = [start]
    prev = -1
    cur = start
    while True:
        row = board.blue_row(cur) & ~(1 << prev if prev >= 0 else 0)
        if not row:
            return tuple(seq)
        prev, cur = cur, (row & -row).bit_length() - 1
        seq.append(cur)


Gen = Generator[Move, str, None]


class InductiveBuilder:
    """Builder for RR(C4, P_n, H) with H empty or one of the short start paths.

    ``books`` supplies the base games 7 <= n' <= 13.  With ``rrc`` set the
    engine accepts a red reply that closes a C4 and stops, Builder having won
    the unrestricted game.
    """

    def __init__(self, n: int, start: str | StartPosition = "empty", books: BookLibrary | None = None, *, rrc: bool = False):
        self.spec = GameSpec.rr(n, start)
        self.books = books
        self.rrc = rrc
        tag = self.spec.start.tag
        g = self.spec.start.graph()
        self.state = EngineState(n=n, budget=2 * n - 2 - g.e_total, board=g, next_vertex=g.used_vertices)
        seq = tuple(range(self.spec.start.n_edges + 1)) if tag != "empty" else ()
        self._gen = self._game(n, tag, seq)
        self._pending: Move | None = None
        self._finished = False
        self._advance(None)

    # ---------------------------------------------------------- driving

    @property
    def done(self) -> bool:
        return self._finished

    def next_move(self, pos: ColouredGraph | None = None) -> Edge:
        if self._pending is None:
            raise EngineError("no move pending; the game should be over")
        if pos is not None and pos != self.state.board:
            raise EngineError("engine board is out of sync with the game")
        return self._pending.edge

    @property
    def pending(self) -> Move | None:
        return self._pending

    def observe(self, edge: Edge, colour: str) -> None:
        mv = self._pending
        st = self.state
        if mv is None or set(edge) != set(mv.edge):
            raise EngineError(f"observed {edge}, but the pending move is {mv}")
        if colour not in (BLUE, RED):
            raise EngineError(f"unknown colour {colour!r}")
        if colour == RED and has_c4_with(st.board.red, *edge):
            if not self.rrc:
                raise EngineError(f"red {edge} closes a red C4, which RR forbids")
            st.won_by_c4 = True
            st.phase = Phase.DONE
            st.rounds += 1
            self._pending = None
            self._finished = True
            return
        a, b = mv.edge
        st.board = st.board.add(a, b, colour)
        for fr in st.frames:
            fr.board = fr.board.add(a, b, colour)
        st.rounds += 1
        st.budget -= 1
        if st.budget < 0:
            raise EngineError("round budget exhausted")
        if colour == BLUE and st.first_blue is None:
            st.first_blue = st.rounds
        self._advance(colour)

    def _advance(self, colour: str | None) -> None:
        try:
            self._pending = self._gen.send(colour) if colour is not None else next(self._gen)
        except StopIteration:
            self._pending = None
            self._finished = True
            self.state.phase = Phase.DONE
            if not blue_is_target_path(self.state.board.blue, self.spec.n):
                raise EngineError("strategy finished without a blue target path") from None

    # ---------------------------------------------------------- primitives

    def _fresh(self) -> int:
        v = self.state.next_vertex
        self.state.next_vertex += 1
        return v

    def _name(self, R: dict[str, int], name: str) -> int:
        if name not in R:
            R[name] = self._fresh()
            self.state.roles[R[name]] = name
        return R[name]

    def _select(self, a: int, b: int, phase: Phase, forced: bool = False) -> Generator[Move, str, str]:
        st = self.state
        top = st.top
        if a == b:
            raise EngineError(f"loop {a}-{b}")
        if top.colour_of(a, b) is not None or st.board.colour_of(a, b) is not None:
            raise EngineError(f"{a}-{b} is already coloured")
        for fr in st.frames:
            if a in fr.interior or b in fr.interior:
                raise EngineError(f"{a}-{b} touches a contracted vertex")
            if {a, b} == set(fr.virtual):
                raise EngineError(f"{a}-{b} is a virtual edge")
        if forced and not has_c4_with(top.red, a, b):
            raise EngineError(f"{a}-{b} is not forced")
        st.phase = phase
        colour = yield Move((a, b), phase, forced)
        return colour

    def _push(self, path: tuple[int, ...], n: int, expected_m: int | None, where: str) -> int:
        st = self.state
        frame = contraction_push(st.top, path)
        if expected_m is not None and frame.m != expected_m:
            raise ContractionError(f"{where}: m = {frame.m}, expected {expected_m}")
        st.frames.append(frame)
        st.contractions.append(
            ContractionRecord(where, tuple(path), frame.k, frame.m, expected_m, n, n - frame.k, st.rounds)
        )
        return n - frame.k

    def _force(self, bfly: Butterfly, variant: str, **kw) -> Generator[Move, str, tuple[int, int]]:
        bfly.check_red(self.state.top)
        steps, ends = butterfly_force_plan(bfly, variant, **kw)
        for a, b in steps:
            yield from self._select(a, b, Phase.FORCE, forced=True)
        return ends

    # ---------------------------------------------------------- games

    def _game(self, n: int, tag: str, seq: tuple[int, ...]) -> Gen:
        if self.state.top != _path_graph(tag, seq):
            raise EngineError(f"board is not the {tag} start on {seq}")
        if n <= BASE_MAX:
            yield from self._book(n, tag, seq)
            return
        if tag == "empty":
            yield from self._empty(n)
            return
        plan, names = START_ENTRY[tag]
        R = dict(zip(names, seq))
        self.state.roles.update({v: k for k, v in R.items()})
        yield from self._script(n, T[plan], R, plan)

    def _book(self, n: int, tag: str, seq: tuple[int, ...]) -> Gen:
        if self.books is None:
            raise EngineError(f"base game P{n} from {tag} needs strategy books")
        if n < 7 or (tag == "empty" and n < 8):
            raise EngineError(f"no base strategy for P{n} from {tag}")
        walker = BookWalker(self.books.index(n), n, tag, seq, self._fresh)
        while True:
            live, _ = walker.next_move()
            if walker.live_board() != self.state.top:
                raise EngineError(f"book line {walker.line} does not match the board")
            colour = yield from self._select(*live, Phase.BOOK)
            if walker.observe(colour):
                return

    def _script(self, n: int, step: Step, R: dict[str, int], where: str) -> Gen:
        while True:
            self.state.cursor = where
            if isinstance(step, Select):
                a, b = self._name(R, step.a), self._name(R, step.b)
                colour = yield from self._select(a, b, Phase.SCRIPT)
                step = step.blue if colour == BLUE else step.red
            elif isinstance(step, Force):
                for p, q in step.edges:
                    yield from self._select(R[p], R[q], Phase.SCRIPT, forced=True)
                step = step.then
            elif isinstance(step, Contract):
                n = self._push(tuple(R[x] for x in step.path), n, step.m, f"T{where}")
                step = step.then
            elif isinstance(step, Residual):
                yield from self._game(n, step.tag, tuple(R[x] for x in step.seq))
                return
            elif isinstance(step, Goto):
                mapped = {p: R[o] for p, o in step.names.items() if o in R}
                used = set(mapped.values())
                for k, v in R.items():
                    if k not in step.names and v not in used:
                        mapped[k] = v
                R = mapped
                where = step.target
                step = T[step.target]
            else:
                raise EngineError(f"unknown script step {step!r}")

    def _empty(self, n: int) -> Gen:
        st = self.state
        R: dict[str, int] = {}
        for t, (p, q) in enumerate(STAGE1_EDGES, 1):
            colour = yield from self._select(self._name(R, p), self._name(R, q), Phase.STAGE1)
            if colour == BLUE:
                yield from self._script(n, T[str(t)], R, str(t))
                return
        wings = {"u0": [R["u3"]], "u1": [R["u5"]]}
        last = n - 1 if n % 2 == 0 else n - 2
        for t in range(8, last + 1):
            c = "u0" if t % 2 == 0 else "u1"
            x = self._name(R, f"u{t}")
            wings[c].append(x)
            colour = yield from self._select(R[c], x, Phase.STAGE2)
            if colour == BLUE:
                yield from self._stage2_blue(n, t, R, wings)
                return
        if n % 2 == 0:
            yield from self._force(self._bfly(R, wings["u0"], wings["u1"]), "i")
            return
        y = self._name(R, f"u{n - 1}")
        colour = yield from self._select(R[f"u{n - 2}"], y, Phase.STAGE3)
        if colour == BLUE:
            yield from self._stage3_blue(n, R, wings)
            return
        yield from self._force(self._bfly(R, wings["u0"], wings["u1"]), "i")
        yield from self._select(R["u0"], y, Phase.FORCE, forced=True)
        st.cursor = "all red"

    def _bfly(self, R: dict[str, int], wing0, wing1, swap: bool = False) -> Butterfly:
        b = Butterfly(R["u0"], R["u1"], (R["u2"], R["u6"]), (R["u4"], R["u7"]), tuple(wing0), tuple(wing1))
        return b.swapped() if swap else b

    def _stage3_blue(self, n: int, R: dict[str, int], wings) -> Gen:
        last, prev, back = R[f"u{n - 1}"], R[f"u{n - 2}"], R[f"u{n - 3}"]
        self.state.cursor = "stage 3"
        colour = yield from self._select(last, back, Phase.SCRIPT)
        if colour == RED:
            w0 = [x for x in wings["u0"] if x != back]
            w1 = [y for y in wings["u1"] if y != prev]
            yield from self._force(self._bfly(R, w0, w1), "i")
            yield from self._select(R["u1"], last, Phase.FORCE, forced=True)
            yield from self._select(prev, back, Phase.FORCE, forced=True)
        else:
            yield from self._force(self._bfly(R, wings["u0"], wings["u1"]), "i", required=(back, prev))

    def _stage2_blue(self, n: int, t: int, R: dict[str, int], wings) -> Gen:
        x = R[f"u{t}"]
        w0 = [v for v in wings["u0"] if v != x]
        w1 = [v for v in wings["u1"] if v != x]
        where = f"stage 2, t={t}"
        self.state.cursor = where
        if t == 8:
            yield from self._force(self._bfly(R, w0, w1), "i")
            path = blue_walk(self.state.top, x)
            n2 = self._push(path, n, 2 * t - 1, where)
            yield from self._game(n2, "b", (x, R["u1"]))
        elif t == 9:
            y = R["u8"]
            yield from self._force(self._bfly(R, [v for v in w0 if v != y], w1), "i")
            path = blue_walk(self.state.top, x)
            n2 = self._push(path, n, 2 * t - 3, where)
            yield from self._game(n2, "br", (x, R["u0"], y))
        elif t % 2 == 0 and 10 <= t <= n - 5:
            _, y = yield from self._force(self._bfly(R, w0, w1), "ii")
            path = blue_walk(self.state.top, x)
            n2 = self._push(path, n, 2 * t - 3, where)
            yield from self._game(n2, "br", (x, y, R["u1"]))
        elif t % 2 == 1 and (11 <= t <= n - 5 or (t == n - 4 and n % 2 == 1)):
            z = w0[-1]
            _, y = yield from self._force(self._bfly(R, w0[:-1], w1, swap=True), "ii")
            path = blue_walk(self.state.top, x)
            n2 = self._push(path, n, 2 * t - 5, where)
            yield from self._game(n2, "brr", (x, y, R["u0"], z))
        else:
            j = n - t
            if not (j in (2, 3) or (n % 2 == 0 and j in (1, 4))):
                raise EngineError(f"no handler for a first blue edge in round {t} of P{n}")
            for c in ("u1", "u0", "u1")[: j - 1]:
                v = self._fresh()
                wings[c].append(v)
                yield from self._select(R[c], v, Phase.STAGE2)
            arms = {R["u0"]: (R["u2"], R["u6"]), R["u1"]: (R["u4"], R["u7"])}
            mc = malo_dispatch(self.state.top, (R["u0"], R["u1"]), arms, {R["u0"]: wings["u0"], R["u1"]: wings["u1"]})
            yield from self._malo(mc)

    def _malo(self, mc: MaloCase) -> Gen:
        st = self.state
        st.cursor = f"endgame ({mc.case})"
        start_round = st.rounds
        n_h = st.top.e_total
        B = mc.red_bfly
        c1, c2 = mc.c1, mc.c2

        def ends(path: tuple[int, ...], c: int) -> tuple[int, int]:
            # (a, b) with b != c; a == c for a single blue edge
            if len(path) == 1:
                return c, c
            if len(path) == 2:
                return c, path[1]
            return path[0], path[2]

        a1, b1 = ends(mc.blue1, c1)
        a2, b2 = ends(mc.blue2, c2)

        def probe(src: int, pool: tuple[int, ...], avoid=()) -> Generator[Move, str, int]:
            cand = [w for w in pool if w not in avoid]
            p, q = cand[0], cand[1]
            colour = yield from self._select(src, p, Phase.MALO)
            if colour == BLUE:
                return p
            yield from self._select(src, q, Phase.MALO, forced=True)
            return q

        if mc.case == "i":
            yield from self._force(B, "i")
        elif mc.case == "ii":
            l1 = yield from probe(b1, B.wing0)
            l2 = yield from probe(b2, B.wing1)
            yield from self._force(B, "iii", end0=l1, end1=l2)
        elif mc.case == "iii":
            y = yield from probe(b1, B.wing1)
            _, z = yield from self._force(B.without_leaf(y).swapped(), "ii")
            yield from self._select(y, z, Phase.MALO, forced=True)
        elif mc.case == "iv":
            y = yield from probe(b2, B.wing0)
            _, z = yield from self._force(B.without_leaf(y), "ii")
            yield from self._select(y, z, Phase.MALO, forced=True)
        elif mc.case == "v":
            first = B.wing1[0]
            y = yield from probe(b1, B.wing1)
            x = yield from probe(a1, B.wing1, avoid=(y, first))
            _, z = yield from self._force(B.without_leaf(y).without_leaf(x).swapped(), "ii")
            yield from self._select(y, z, Phase.MALO, forced=True)
        else:
            raise EngineError(f"unknown endgame case {mc.case}")
        used = st.rounds - start_round
        st.endgames.append({"case": mc.case, "rounds": used, "bound": n_h})
        if used > n_h:
            raise EngineError(f"endgame ({mc.case}) used {used} rounds, more than e(H) = {n_h}")


def engine_next_move(builder: InductiveBuilder, pos: ColouredGraph | None = None) -> Edge:
    return builder.next_move(pos)


def engine_observe(builder: InductiveBuilder, edge: Edge, colour: str) -> None:
    builder.observe(edge, colour)


def first_blue_handler(n: int, t: int) -> str:
    """Which part of the strategy answers a first blue edge in round t (n >= 14)."""
    if n < 14:
        raise ValueError("the inductive strategy starts at n = 14")
    stage2_end = n - 1 if n % 2 == 0 else n - 2
    if 1 <= t <= 7:
        return f"stage 1 script, round {t}"
    if t in (8, 9):
        return f"stage 2, round {t}"
    if 8 <= t <= stage2_end:
        j = n - t
        if t % 2 == 0 and t <= n - 5:
            return "stage 2, even round"
        if t % 2 == 1 and (t <= n - 5 or (t == n - 4 and n % 2 == 1)):
            return "stage 2, odd round"
        if j in (2, 3) or (n % 2 == 0 and j in (1, 4)):
            return f"stage 2 endgame, j={j}"
        raise ValueError(f"round {t} has no handler")
    if n % 2 == 1 and t == n - 1:
        return "stage 3"
    if n <= t <= 2 * n - 2:
        return "forcing phase (every edge is forced, blue is the only reply)"
    raise ValueError(f"round {t} is outside the game")
