"""Painter policies, Builder adapters and the match runner.

Any Builder with ``next_move(pos)`` and ``observe(edge, colour)`` can meet
any Painter with ``choose(pos, edge, ruleset, round)``.  The runner checks
legality for both sides itself, so a policy bug cannot slip through.
"""

from __future__ import annotations

import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Protocol

from .graph import BLUE, RED, ColouredGraph, Edge, blue_is_target_path, has_c4_with
from .rules import (
    GameSpec,
    Ruleset,
    StartPosition,
    TerminalStatus,
    apply_colour,
    is_legal_builder_move,
    legal_builder_moves,
    painter_may_colour,
    terminal_status,
)


class Builder(Protocol):
    def next_move(self, pos: ColouredGraph) -> Edge: ...

    def observe(self, edge: Edge, colour: str) -> None: ...


# ------------------------------------------------------------ painters


def _legal(pos: ColouredGraph, edge: Edge, colour: str, ruleset: Ruleset) -> str:
    if colour == RED and ruleset is Ruleset.RR and has_c4_with(pos.red, *edge):
        return BLUE
    return colour


@dataclass
class AllRed:
    """Red whenever allowed."""

    name: str = "allRed"

    def choose(self, pos: ColouredGraph, edge: Edge, ruleset: Ruleset, rnd: int) -> str:
        return _legal(pos, edge, RED, ruleset)


@dataclass
class UniformRandom:
    """Fair coin per edge; an illegal red becomes blue."""

    seed: int = 0
    name: str = "uniformRandom"

    def __post_init__(self) -> None:
        self._rng = random.Random(self.seed)

    def choose(self, pos: ColouredGraph, edge: Edge, ruleset: Ruleset, rnd: int) -> str:
        return _legal(pos, edge, self._rng.choice((BLUE, RED)), ruleset)


@dataclass
class FirstBlueAt:
    """Red before round t, blue in round t, red afterwards (when allowed)."""

    t: int
    name: str = "firstBlueAt"

    def choose(self, pos: ColouredGraph, edge: Edge, ruleset: Ruleset, rnd: int) -> str:
        return BLUE if rnd == self.t else _legal(pos, edge, RED, ruleset)


class SolverOptimal:
    """Exact Painter for small games: picks a reply after which Builder cannot win.

    Positions are judged in the capped game (n, v, e); for an RR match the
    model is the base-case game (n, n+1, 2n-2).  Limited to n <= ``max_n``.
    """

    name = "solverOptimal"

    def __init__(self, n: int, v: int | None = None, e: int | None = None, max_n: int = 8):
        from .solver import Solver

        if n > max_n:
            raise ValueError(f"solverOptimal is limited to n <= {max_n}")
        self.n = n
        self.v = v if v is not None else n + 1
        self.e = e if e is not None else 2 * n - 2
        self.solver = Solver(n, self.v, self.e)
        self.model = GameSpec(n, self.v, self.e)

    def _builder_wins_after(self, pos: ColouredGraph, edge: Edge, colour: str) -> bool:
        after = pos.add(*edge, colour)
        status = terminal_status(after, self.model, edge, colour)
        if status is not TerminalStatus.ONGOING:
            return status.builder_won
        try:
            return self.solver.solve_builder(after)
        except ValueError:
            return True

    def choose(self, pos: ColouredGraph, edge: Edge, ruleset: Ruleset, rnd: int) -> str:
        options = [c for c in (RED, BLUE) if painter_may_colour(pos, edge, c, ruleset)]
        for c in options:
            if not self._builder_wins_after(pos, edge, c):
                return c
        # every reply loses; at least do not end the game on the spot
        for c in options:
            after = pos.add(*edge, c)
            if terminal_status(after, self.model, edge, c) is TerminalStatus.ONGOING:
                return c
        return options[0]


def make_painter(policy: str, *, seed: int = 0, t: int = 1, n: int = 7) -> object:
    p = policy.lower()
    if p in ("allred", "all-red"):
        return AllRed()
    if p in ("uniformrandom", "random"):
        return UniformRandom(seed)
    if p in ("firstblueat", "first-blue"):
        return FirstBlueAt(t)
    if p in ("solveroptimal", "optimal"):
        return SolverOptimal(n)
    raise ValueError(f"unknown painter policy {policy!r}")


# ------------------------------------------------------------ builders


class SolverBuilder:
    """RRC Builder that plays the solver's stored winning move (else any legal move)."""

    def __init__(self, spec: GameSpec, solver=None):
        from .solver import Solver

        self.spec = spec
        self.solver = solver if solver is not None else Solver.for_spec(spec)
        self.phase = "solver"

    def next_move(self, pos: ColouredGraph) -> Edge:
        mv = self.solver.winning_move(pos)
        if mv is not None and is_legal_builder_move(pos, self.spec, mv):
            return mv
        moves = legal_builder_moves(pos, self.spec)
        if not moves:
            raise RuntimeError("Builder has no legal move")
        return moves[0]

    def observe(self, edge: Edge, colour: str) -> None:
        pass


def engine_builder(spec: GameSpec, books=None):
    """The inductive engine for an RR spec (books serve n <= 13)."""
    from .engine import BookLibrary, InductiveBuilder

    if isinstance(books, (str, Path)):
        books = BookLibrary(books)
    return InductiveBuilder(spec.n, spec.start, books, rrc=spec.ruleset is Ruleset.RRC)


# ------------------------------------------------------------ transcripts


@dataclass(frozen=True)
class Record:
    round: int
    edge: Edge
    colour: str
    phase: str = ""

    def line(self) -> str:
        a, b = self.edge
        tail = f" {self.phase}" if self.phase else ""
        return f"({self.round}) {a}-{b} {self.colour}{tail}"


_RECORD = re.compile(r"\((\d+)\) (\d+)-(\d+) ([rb])(?: (\S+))?")


def spec_line(spec: GameSpec) -> str:
    s = spec.start
    if s.tag == "explicit":
        fmt = lambda es: ";".join(f"{a}-{b}" for a, b in es)  # noqa: E731
        start = f"red={fmt(s.red)},blue={fmt(s.blue)}"
    else:
        start = f"start={s.tag}"
    return f"ruleset={spec.ruleset.value},n={spec.n},v={spec.v},e={spec.e},{start}"


def parse_spec_line(text: str) -> GameSpec:
    fields = dict(re.findall(r"(\w+)=([^,\s]*)", text))
    ruleset = Ruleset(fields.get("ruleset", "RRC"))
    n = int(fields["n"])
    if "red" in fields or "blue" in fields:

        def edges(s: str) -> list[Edge]:
            return [tuple(map(int, tok.split("-"))) for tok in s.split(";") if tok]

        start = StartPosition.explicit(edges(fields.get("red", "")), edges(fields.get("blue", "")))
    else:
        start = StartPosition.named(fields.get("start", "empty"))
    if ruleset is Ruleset.RR:
        return GameSpec.rr(n, start)
    return GameSpec(n, int(fields["v"]), int(fields["e"]), start, ruleset)


@dataclass
class Transcript:
    spec: GameSpec
    records: list[Record] = field(default_factory=list)
    outcome: str = TerminalStatus.ONGOING.value
    diagnostic: str = ""

    @property
    def rounds(self) -> int:
        return len(self.records)

    @property
    def builder_won(self) -> bool:
        return self.outcome in (TerminalStatus.BUILDER_WIN_BLUE_PATH.value, TerminalStatus.BUILDER_WIN_RED_C4.value)

    def final_position(self) -> ColouredGraph:
        pos = self.spec.start.graph()
        for r in self.records:
            pos = pos.add(*r.edge, r.colour)
        return pos

    def serialize(self) -> str:
        head = [f"# spec {spec_line(self.spec)}", f"# outcome {self.outcome} rounds={self.rounds}"]
        if self.diagnostic:
            head.append(f"# diagnostic {self.diagnostic}")
        return "\n".join(head + [r.line() for r in self.records]) + "\n"

    @classmethod
    def parse(cls, text: str) -> Transcript:
        spec = None
        outcome = TerminalStatus.ONGOING.value
        diag = ""
        records = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("# spec "):
                spec = parse_spec_line(line[len("# spec "):])
            elif line.startswith("# outcome "):
                outcome = line.split()[2]
            elif line.startswith("# diagnostic "):
                diag = line[len("# diagnostic "):]
            elif line.startswith("#"):
                continue
            else:
                m = _RECORD.fullmatch(line)
                if m is None:
                    raise ValueError(f"transcript line {lineno}: malformed record {line!r}")
                rnd, a, b, c, phase = m.groups()
                records.append(Record(int(rnd), (int(a), int(b)), c, phase or ""))
        if spec is None:
            raise ValueError("transcript has no spec line")
        return cls(spec, records, outcome, diag)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.serialize())


def replay(tr: Transcript) -> Transcript:
    """Re-run the recorded moves through the game rules alone."""
    spec = tr.spec
    pos = spec.start.graph()
    out = Transcript(spec)
    status = TerminalStatus.ONGOING
    for k, r in enumerate(tr.records, 1):
        if r.round != k:
            out.outcome, out.diagnostic = "aborted", f"round {r.round} out of sequence"
            return out
        if status is not TerminalStatus.ONGOING:
            out.outcome, out.diagnostic = "aborted", "moves after the game ended"
            return out
        if not is_legal_builder_move(pos, spec, r.edge):
            out.outcome, out.diagnostic = "aborted", f"illegal Builder move {r.edge} in round {k}"
            return out
        if not painter_may_colour(pos, r.edge, r.colour, spec.ruleset):
            out.outcome, out.diagnostic = "aborted", f"illegal Painter colour in round {k}"
            return out
        pos = apply_colour(pos, r.edge, r.colour)
        out.records.append(r)
        status = terminal_status(pos, spec, r.edge, r.colour)
    out.outcome = status.value
    return out


# ------------------------------------------------------------ matches


class StopMatch(Exception):
    """Raised by a Painter (a human at the keyboard) to end a match early."""


def run_match(builder: Builder, painter, spec: GameSpec, max_rounds: int | None = None) -> Transcript:
    """Alternate Builder and Painter until the game ends or a side errs."""
    pos = spec.start.graph()
    tr = Transcript(spec)
    limit = max_rounds if max_rounds is not None else spec.e - pos.e_total
    while True:
        if tr.rounds >= limit:
            tr.outcome = TerminalStatus.PAINTER_WIN_BUDGET.value
            return tr
        try:
            edge = builder.next_move(pos)
        except Exception as exc:  # a strategy failure ends the match with a diagnostic
            tr.outcome, tr.diagnostic = "aborted", f"Builder error: {type(exc).__name__}: {exc}"
            return tr
        edge = tuple(edge)
        if not is_legal_builder_move(pos, spec, edge):
            tr.outcome, tr.diagnostic = "aborted", f"illegal Builder move {edge}"
            return tr
        rnd = tr.rounds + 1
        try:
            colour = painter.choose(pos, edge, spec.ruleset, rnd)
        except StopMatch:
            tr.outcome, tr.diagnostic = "quit", f"Painter stopped before colouring {edge} in round {rnd}"
            return tr
        if not painter_may_colour(pos, edge, colour, spec.ruleset):
            tr.outcome, tr.diagnostic = "aborted", f"illegal Painter colour {colour} on {edge}"
            return tr
        pending = getattr(builder, "pending", None)
        phase = pending.phase.value if pending is not None else getattr(builder, "phase", "")
        pos = apply_colour(pos, edge, colour)
        tr.records.append(Record(rnd, edge, colour, phase))
        status = terminal_status(pos, spec, edge, colour)
        if status is not TerminalStatus.ONGOING:
            tr.outcome = status.value
            return tr
        try:
            builder.observe(edge, colour)
        except Exception as exc:
            tr.outcome, tr.diagnostic = "aborted", f"Builder error: {type(exc).__name__}: {exc}"
            return tr


def rr_win_ok(tr: Transcript) -> bool:
    """Won within 2n-2-e(H) rounds with exactly n-1 blue edges forming one P_n."""
    spec = tr.spec
    if tr.outcome != TerminalStatus.BUILDER_WIN_BLUE_PATH.value:
        return False
    pos = tr.final_position()
    return (
        tr.rounds <= 2 * spec.n - 2 - spec.start.n_edges
        and pos.e_blue == spec.n - 1
        and blue_is_target_path(pos.blue, spec.n)
    )


# ------------------------------------------------------------ sweeps


@dataclass(frozen=True)
class SweepResult:
    n: int
    painter: str
    won: bool
    rounds: int
    outcome: str
    diagnostic: str = ""
    # (where, k, m, expected m) for every contraction the engine made
    contractions: tuple[tuple[str, int, int, int | None], ...] = ()


def sweep_painters(n: int, seeds: int = 100, seed0: int = 0) -> list[tuple[str, object]]:
    out: list[tuple[str, object]] = [("allRed", AllRed())]
    out += [(f"firstBlueAt({t})", FirstBlueAt(t)) for t in range(1, 2 * n - 2)]
    out += [(f"uniformRandom({s})", UniformRandom(s)) for s in range(seed0, seed0 + seeds)]
    return out


def _sweep_one(args) -> list[SweepResult]:
    n, books_dir, seeds, seed0 = args
    from .engine import BookLibrary

    lib = BookLibrary(books_dir) if books_dir is not None else None
    spec = GameSpec.rr(n)
    results = []
    for name, painter in sweep_painters(n, seeds, seed0):
        builder = engine_builder(spec, lib)
        tr = run_match(builder, painter, spec)
        audit = tuple((c.where, c.k, c.m, c.expected_m) for c in builder.state.contractions)
        results.append(SweepResult(n, name, rr_win_ok(tr), tr.rounds, tr.outcome, tr.diagnostic, audit))
    return results


def engine_sweep(
    ns: Iterable[int], books_dir: str | Path | None, seeds: int = 100, threads: int = 1, seed0: int = 0
) -> list[SweepResult]:
    """Engine against allRed, every firstBlueAt(t) and ``seeds`` random Painters, per n."""
    jobs = [(n, str(books_dir) if books_dir is not None else None, seeds, seed0) for n in ns]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_sweep_one, jobs))
    else:
        parts = [_sweep_one(j) for j in jobs]
    out = [r for part in parts for r in part]
    out.sort(key=lambda r: (r.n, r.painter))
    return out
