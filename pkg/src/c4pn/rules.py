"""Game specifications, legality, terminal detection and pruning.

Two rule sets share this module.  RRC is the capped computational game:
at most ``v`` vertices, at most ``e`` coloured edges, a connected board and
blue edges that must stay inside a path on ``n`` vertices.  RR is the
restricted game played by the inductive engine: Painter may never make a red
C4 and Builder wins with a blue ``P_n`` made of exactly ``n - 1`` blue edges.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from pathlib import Path

from .graph import (
    BLUE,
    RED,
    ColouredGraph,
    Edge,
    blue_extends_to_paths,
    blue_is_target_path,
    has_c4_with,
)


class Ruleset(str, enum.Enum):
    RRC = "RRC"
    RR = "RR"


class TerminalStatus(str, enum.Enum):
    ONGOING = "ongoing"
    BUILDER_WIN_RED_C4 = "builderWinRedC4"
    BUILDER_WIN_BLUE_PATH = "builderWinBluePath"
    PAINTER_WIN_BUDGET = "painterWinBudget"
    PAINTER_WIN_PRUNED = "painterWinPruned"

    @property
    def builder_won(self) -> bool:
        return self in (TerminalStatus.BUILDER_WIN_RED_C4, TerminalStatus.BUILDER_WIN_BLUE_PATH)


# Named starts: coloured paths on consecutive labels, colours per edge.
START_COLOURS = {
    "empty": "",
    "b": "b",
    "br": "br",
    "brr": "brr",
    "brb": "brb",
    "brrb": "brrb",
}
START_NAMES = {
    "empty": "empty",
    "b": "b-path",
    "br": "br-path",
    "brr": "brr-path",
    "brb": "brb-path",
    "brrb": "brrb-path",
}
_TAG_ALIASES = {name: tag for tag, name in START_NAMES.items()}
_TAG_ALIASES.update({tag: tag for tag in START_NAMES})
_TAG_ALIASES["∅"] = "empty"


@dataclass(frozen=True)
class StartPosition:
    """A start position: a named coloured path or explicit edge lists."""

    tag: str
    red: tuple[Edge, ...] = ()
    blue: tuple[Edge, ...] = ()

    @classmethod
    def named(cls, tag: str) -> StartPosition:
        try:
            tag = _TAG_ALIASES[tag]
        except KeyError:
            raise ValueError(f"unknown start tag {tag!r}") from None
        blue, red = [], []
        for i, c in enumerate(START_COLOURS[tag]):
            (blue if c == "b" else red).append((i, i + 1))
        return cls(tag, tuple(red), tuple(blue))

    @classmethod
    def explicit(cls, red: list[Edge], blue: list[Edge]) -> StartPosition:
        return cls("explicit", tuple(map(tuple, red)), tuple(map(tuple, blue)))

    @property
    def name(self) -> str:
        return START_NAMES.get(self.tag, "explicit")

    def graph(self) -> ColouredGraph:
        return ColouredGraph.from_edges(self.blue, self.red)

    @property
    def n_edges(self) -> int:
        return len(self.red) + len(self.blue)

    @property
    def max_vertex(self) -> int:
        return max((x for e in self.red + self.blue for x in e), default=-1)


SERIES_STARTS = ("empty", "b", "br", "brr", "brb", "brrb")


@dataclass(frozen=True)
class GameSpec:
    n: int
    v: int
    e: int
    start: StartPosition = field(default_factory=lambda: StartPosition.named("empty"))
    ruleset: Ruleset = Ruleset.RRC

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.ruleset is Ruleset.RRC:
            if self.e < self.start.n_edges:
                raise ValueError(f"budget e={self.e} is below the {self.start.n_edges} start edges")
            if self.start.max_vertex >= self.v:
                raise ValueError("start position does not fit under the vertex cap")

    @classmethod
    def rr(cls, n: int, start: StartPosition | str = "empty") -> GameSpec:
        """The restricted game RR(C4, P_n, H) with its 2n-2 round horizon."""
        if isinstance(start, str):
            start = StartPosition.named(start)
        return cls(n, 10**9, 2 * n - 2, start, Ruleset.RR)

    @property
    def header(self) -> str:
        return f"rc(C4,P{self.n},{self.start.name},{self.v},{self.e})"

    def with_start(self, start: StartPosition) -> GameSpec:
        return GameSpec(self.n, self.v, self.e, start, self.ruleset)


@dataclass(frozen=True)
class SeriesGame:
    """One line of a series config: game parameters plus its starts in order."""

    n: int
    v: int
    e: int
    starts: tuple[StartPosition, ...]

    def specs(self) -> list[GameSpec]:
        """Specs for the starts that fit under the vertex cap (others are skipped)."""
        return [GameSpec(self.n, self.v, self.e, s) for s in self.starts if s.max_vertex < self.v]


# (n, v, e) of the default series, in solving order.
SERIES_V = (4, 5, 6, 7, 8, 8, 9, 10, 11, 12, 13, 14)
SERIES_E = (6, 8, 9, 11, 13, 12, 14, 16, 18, 20, 22, 24)
SERIES_N = (3, 4, 5, 6, 7, 7, 8, 9, 10, 11, 12, 13)


def default_series() -> list[SeriesGame]:
    starts = tuple(StartPosition.named(t) for t in SERIES_STARTS)
    return [SeriesGame(n, v, e, starts) for n, v, e in zip(SERIES_N, SERIES_V, SERIES_E)]


_FIELD = re.compile(r"(\w+)=([^\s]+)")


def _parse_edges(text: str) -> list[Edge]:
    out = []
    for tok in filter(None, re.split(r"[;,\s]+", text)):
        if "-" in tok:
            a, b = tok.split("-")
        elif len(tok) == 2:
            a, b = tok[0], tok[1]
            a, b = str(int(a, 16)), str(int(b, 16))
        else:
            raise ValueError(f"bad edge {tok!r}")
        out.append((int(a), int(b)))
    return out


def parse_game(text: str) -> SeriesGame:
    """Parse ``n=..,v=..,e=..[,start=a|b|..][,red=..][,blue=..]``.

    Missing ``v`` and ``e`` default to ``n+1`` and ``2n-2``.  Without a
    start every named start is played; ``red``/``blue`` give an explicit
    start (edges like ``0-1;1-2`` or hex pairs ``01;12``).
    """
    fields: dict[str, str] = {}
    for part in re.split(r"[,\s]+(?=\w+=)", text.strip()):
        m = _FIELD.fullmatch(part.strip().rstrip(","))
        if not m:
            raise ValueError(f"malformed game field {part!r}")
        fields[m.group(1)] = m.group(2)
    unknown = set(fields) - {"n", "v", "e", "start", "starts", "red", "blue"}
    if unknown:
        raise ValueError(f"unknown game fields: {sorted(unknown)}")
    try:
        n = int(fields["n"])
    except KeyError:
        raise ValueError("game needs n=") from None
    v = int(fields.get("v", n + 1))
    e = int(fields.get("e", 2 * n - 2))
    if "red" in fields or "blue" in fields:
        starts = (StartPosition.explicit(_parse_edges(fields.get("red", "")), _parse_edges(fields.get("blue", ""))),)
    else:
        tags = fields.get("start", fields.get("starts", "|".join(SERIES_STARTS)))
        starts = tuple(StartPosition.named(t) for t in re.split(r"[|/+]", tags) if t)
    game = SeriesGame(n, v, e, starts)
    for s in starts:
        if e < s.n_edges:
            raise ValueError(f"budget e={e} is below the {s.n_edges} start edges")
    return game


def load_series(path: str | Path) -> list[SeriesGame]:
    """Read a series config: one game per line, ``#`` comments allowed."""
    games = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            games.append(parse_game(line))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return games


def legal_builder_moves(pos: ColouredGraph, spec: GameSpec, hint: Edge | None = None) -> list[Edge]:
    """Builder's RRC moves in the order the search tries them."""
    v = pos.used_vertices
    moves: list[Edge] = []
    for i in range(v - 1, -1, -1):
        if pos.blue_degree(i) > 1:
            continue
        for j in range(v - 1, i, -1):
            if pos.colour_of(i, j) is None and pos.blue_degree(j) <= 1:
                moves.append((i, j))
    if 0 < v < spec.v:
        moves.extend((i, v) for i in range(v) if pos.blue_degree(i) <= 1)
    if v == 0:
        moves.append((0, 1))
    moves = [m for m in moves if blue_extends_to_paths(pos.blue, *m)]
    if hint is not None and _rrc_legal(pos, spec, hint):
        first = (min(hint), max(hint))
        moves = [first] + [m for m in moves if m != first]
    return moves


def _rrc_legal(pos: ColouredGraph, spec: GameSpec, edge: Edge) -> bool:
    a, b = min(edge), max(edge)
    v = pos.used_vertices
    if a < 0 or a == b or b >= spec.v:
        return False
    if pos.colour_of(a, b) is not None:
        return False
    if v == 0:
        return (a, b) == (0, 1)
    # connectivity: at least one endpoint is already on the board, the
    # other may be the single next fresh label
    if a >= v or b > v:
        return False
    if b == v and pos.degree(a) == 0:
        return False
    return blue_extends_to_paths(pos.blue, a, b)


def is_legal_builder_move(pos: ColouredGraph, spec: GameSpec, edge: Edge) -> bool:
    """Rules (2)-(4) for RRC; for RR any uncoloured pair of distinct vertices."""
    if spec.ruleset is Ruleset.RR:
        a, b = edge
        return a != b and a >= 0 and b >= 0 and pos.colour_of(a, b) is None
    return _rrc_legal(pos, spec, edge)


def apply_colour(pos: ColouredGraph, edge: Edge, colour: str) -> ColouredGraph:
    return pos.add(edge[0], edge[1], colour)


def painter_may_colour(pos: ColouredGraph, edge: Edge, colour: str, ruleset: Ruleset) -> bool:
    """RR forbids a red reply that closes a red C4."""
    if colour == BLUE:
        return True
    return ruleset is Ruleset.RRC or not has_c4_with(pos.red, *edge)


def terminal_status(pos: ColouredGraph, spec: GameSpec, last_edge: Edge, last_colour: str) -> TerminalStatus:
    """Status after ``last_edge`` was coloured (``pos`` already contains it)."""
    if last_colour == RED and spec.ruleset is Ruleset.RRC:
        red_without = pos.remove(*last_edge).red
        if has_c4_with(red_without, *last_edge):
            return TerminalStatus.BUILDER_WIN_RED_C4
    if last_colour == BLUE and pos.e_blue == spec.n - 1 and blue_is_target_path(pos.blue, spec.n):
        return TerminalStatus.BUILDER_WIN_BLUE_PATH
    if pos.e_total >= spec.e:
        return TerminalStatus.PAINTER_WIN_BUDGET
    if spec.ruleset is Ruleset.RR and pos.e_blue >= spec.n - 1:
        # more than n-1 blue edges can never end in exactly n-1
        return TerminalStatus.PAINTER_WIN_PRUNED
    return TerminalStatus.ONGOING


def budget_prune(pos: ColouredGraph, spec: GameSpec) -> bool:
    """Builder-conservative cut: too many blue or red edges to still win."""
    return pos.e_blue >= spec.n or pos.e_red > spec.e - spec.n + 1


def spare_blue_vertex_exists(pos: ColouredGraph, spec: GameSpec) -> bool:
    """After a tentative blue edge: some vertex below the cap has no blue edge.

    Only a valid cut when v > n; with v = n the answer is always True.
    """
    if spec.v <= spec.n:
        return True
    return any(pos.blue_degree(x) == 0 for x in range(spec.v))
