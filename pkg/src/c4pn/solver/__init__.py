"""Exhaustive Builder/Painter search for RRC(C4, Pn, H, v, e).

The heavy lifting happens in the compiled kernel; this module owns the game
bookkeeping: one transposition table per game, hint hand-off from the
previous game in a series, statistics and result records.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from ..graph import BLUE, ColouredGraph, Edge, blue_extends_to_paths, key_from_words
from ..rules import GameSpec, Ruleset, SeriesGame
from . import _kernel as K

log = logging.getLogger(__name__)

VMAX = K.VMAX


def to_arrays(pos: ColouredGraph) -> tuple[np.ndarray, np.ndarray]:
    if pos.used_vertices > VMAX:
        raise ValueError(f"positions are limited to {VMAX} vertices")
    blue = np.zeros(VMAX, np.int64)
    red = np.zeros(VMAX, np.int64)
    blue[: len(pos.blue)] = pos.blue
    red[: len(pos.red)] = pos.red
    return blue, red


def decode_move(entry: int, order: np.ndarray) -> Edge:
    """Board edge of a stored entry, translated through the sort order."""
    return int(order[entry >> 8]), int(order[entry & 255])


@dataclass
class SolveStats:
    unique_positions: int = 0
    total_positions: int = 0

    def __post_init__(self) -> None:
        assert self.unique_positions <= self.total_positions


@dataclass
class GameResult:
    spec: GameSpec
    rc: int
    stats: SolveStats
    seconds: float

    def line(self) -> str:
        s = self.stats
        return (
            f"{self.spec.header}={self.rc}  unique={s.unique_positions} "
            f"total={s.total_positions}  time={self.seconds:.2f}s"
        )


class TranspositionTable:
    """Position key to move entry (0 = no winning move) for one game."""

    def __init__(self, v: int, log2_capacity: int = 16):
        self.wide = v > 14
        self._t = K.Table(log2_capacity, self.wide, 0.9)

    def __len__(self) -> int:
        return int(self._t.size)

    def entry(self, pos: ColouredGraph) -> tuple[int, np.ndarray]:
        """(entry or -1, sort order) for a position."""
        blue, red = to_arrays(pos)
        entry, order = K.lookup(self._t, blue, red, pos.used_vertices)
        return int(entry), order


class Solver:
    """Search state of one (n, v, e) game; its table is shared by all starts."""

    def __init__(
        self,
        n: int,
        v: int,
        e: int,
        hints: TranspositionTable | None = None,
        *,
        use_tt: bool = True,
        use_budget_prune: bool = True,
        use_spare: bool = True,
    ):
        if v > VMAX:
            raise ValueError(f"vertex cap {v} exceeds {VMAX}")
        self.n, self.v, self.e = n, v, e
        self.table = TranspositionTable(v)
        self.hints = hints
        prev = hints._t if hints is not None else K.Table(1, False, 0.9)
        self._st = K.SearchState(
            n, v, e, self.table._t, prev, hints is not None, use_tt, use_budget_prune, use_spare
        )

    @classmethod
    def for_spec(cls, spec: GameSpec, hints: TranspositionTable | None = None, **flags) -> Solver:
        if spec.ruleset is not Ruleset.RRC:
            raise ValueError("the solver plays the RRC rules")
        return cls(spec.n, spec.v, spec.e, hints, **flags)

    @property
    def stats(self) -> SolveStats:
        return SolveStats(int(self._st.unique), int(self._st.total))

    def solve_builder(self, pos: ColouredGraph) -> bool:
        """True iff Builder, to move in ``pos``, wins under RRC."""
        blue, red = to_arrays(pos)
        return bool(K.solve_from(self._st, blue, red, pos.used_vertices))

    def solve_painter(self, pos: ColouredGraph, edge: Edge) -> bool:
        """True iff both Painter replies to ``edge`` lose for Painter."""
        blue, red = to_arrays(pos)
        a, b = edge
        self._st.eb = pos.e_blue
        self._st.er = pos.e_red
        v = max(pos.used_vertices, a + 1, b + 1)
        return bool(K.colour(self._st, blue, red, v, a, b))

    def winning_move(self, pos: ColouredGraph) -> Edge | None:
        """Builder's stored winning move in board labels, searching on demand."""
        entry, order = self.table.entry(pos)
        if entry < 0:
            self.solve_builder(pos)
            entry, order = self.table.entry(pos)
        if entry <= 0:
            return None
        return decode_move(entry, order)


def _check_start_fits(spec: GameSpec) -> None:
    g = spec.start.graph()
    for a, b in g.edges(BLUE):
        if not blue_extends_to_paths(g.remove(a, b).blue, a, b):
            raise ValueError("start position blue graph is not a union of paths")


def solve_game(
    game: SeriesGame,
    hints: TranspositionTable | None = None,
    *,
    emit: Callable[[GameSpec, int, Solver], None] | None = None,
    **flags,
) -> tuple[list[GameResult], Solver]:
    """Solve every fitting start of one game, in order, with one shared table."""
    solver = Solver(game.n, game.v, game.e, hints, **flags)
    results = []
    for spec in game.specs():
        _check_start_fits(spec)
        before = solver.stats
        t0 = time.perf_counter()
        rc = int(solver.solve_builder(spec.start.graph()))
        dt = time.perf_counter() - t0
        after = solver.stats
        stats = SolveStats(
            after.unique_positions - before.unique_positions,
            after.total_positions - before.total_positions,
        )
        res = GameResult(spec, rc, stats, dt)
        log.info("%s", res.line())
        results.append(res)
        if emit is not None:
            emit(spec, rc, solver)
    return results, solver


def book_filename(game: SeriesGame) -> str:
    return f"C4P{game.n}_{game.v}_{game.e}.txt"


@dataclass
class SeriesRun:
    results: list[GameResult] = field(default_factory=list)
    books: dict[str, Path] = field(default_factory=dict)


def run_game_series(
    games: Iterable[SeriesGame],
    books_dir: str | Path | None = None,
    *,
    hints: bool = True,
    on_result: Callable[[GameResult], None] | None = None,
    **flags,
) -> SeriesRun:
    """Solve a series in order; game T takes move hints from game T-1.

    When ``books_dir`` is given one book file per game is written there.
    Only the previous game's table is kept alive.
    """
    from ..certificate import BookWriter

    run = SeriesRun()
    prev: TranspositionTable | None = None
    out_dir = Path(books_dir) if books_dir is not None else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    for game in games:
        writer = None
        fh = None
        if out_dir is not None:
            path = out_dir / book_filename(game)
            fh = open(path, "w")
            writer = BookWriter(fh)
            run.books[path.name] = path

        def emit(spec: GameSpec, rc: int, solver: Solver) -> None:
            if writer is not None:
                writer.write_game(spec, rc, solver)

        try:
            results, solver = solve_game(game, prev if hints else None, emit=emit, **flags)
        finally:
            if fh is not None:
                fh.close()
        for r in results:
            run.results.append(r)
            if on_result is not None:
                on_result(r)
        prev = solver.table
        del solver
    return run


def rc_key(result: GameResult) -> tuple[int, str, int, int]:
    s = result.spec
    return s.n, s.start.tag, s.v, s.e


__all__ = [
    "GameResult",
    "SeriesRun",
    "SolveStats",
    "Solver",
    "TranspositionTable",
    "book_filename",
    "decode_move",
    "key_from_words",
    "run_game_series",
    "solve_game",
    "to_arrays",
]
