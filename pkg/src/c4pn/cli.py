"""Command-line entry points: solve, verify, engine-sim, play, bench.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from .certificate import BookSyntaxError, InternalError, parse_book, verify_book, verify_text
from .graph import BLUE, RED, ColouredGraph, Edge
from .rules import GameSpec, Ruleset, SeriesGame, load_series, painter_may_colour, parse_game

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("c4pn")


class ConfigError(ValueError):
    pass


def default_config() -> Path:
    return Path(str(resources.files("c4pn") / "data" / "default_series.txt"))


def _games(args) -> list[SeriesGame]:
    try:
        if args.game:
            return [parse_game(g) for g in args.game]
        return load_series(args.config or default_config())
    except (OSError, ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from None


def _sweep_range(text: str) -> range:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise ConfigError(f"--sweep-n wants a..b, got {text!r}") from None
    if lo > hi or lo < 2:
        raise ConfigError(f"empty or invalid range {text!r}")
    return range(lo, hi + 1)


def _rr_spec(text: str) -> GameSpec:
    """An RR spec from a --game string; v and e are ignored (RR has no caps)."""
    try:
        game = parse_game(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if len(game.starts) != 1:
        # no start given: RR play begins from the empty board
        return GameSpec.rr(game.n)
    return GameSpec.rr(game.n, game.starts[0])


# ------------------------------------------------------------------- solve


def _solve_one(job):
    game, books_dir, flags = job
    from .solver import run_game_series

    run = run_game_series([game], books_dir, hints=False, **flags)
    return run.results


def cmd_solve(args) -> int:
    from .solver import book_filename, run_game_series

    games = _games(args)
    out_dir = None if args.no_emit else Path(args.books_dir)
    flags = dict(use_tt=not args.no_tt, use_budget_prune=not args.no_budget_prune, use_spare=not args.no_spare)
    t0 = time.perf_counter()

    def show(r) -> None:
        print(f"{r.line()}  elapsed={time.perf_counter() - t0:.1f}s", flush=True)

    if args.threads > 1 and args.no_hints:
        # games are independent without hints, so they may run side by side
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            parts = list(pool.map(_solve_one, [(g, out_dir, flags) for g in games]))
        results = [r for part in parts for r in part]
        for r in results:
            show(r)
    else:
        if args.threads > 1:
            log.warning("hinted series run in order; ignoring --threads %d", args.threads)
        results = run_game_series(games, out_dir, hints=not args.no_hints, on_result=show, **flags).results
    print(f"solved {len(results)} games in {time.perf_counter() - t0:.1f}s")
    if args.verify and out_dir is not None:
        bad = 0
        for game in games:
            path = out_dir / book_filename(game)
            for g, rep in verify_text(path.read_text()):
                if not rep.accepted:
                    bad += 1
                    print(f"{path.name}: rc(C4,P{g.n},{g.start},{g.v},{g.e}) rejected: {rep}")
        print("verification: " + ("all books accepted" if not bad else f"{bad} games rejected"))
        if bad:
            return EXIT_VERIFY
    return EXIT_OK


# ------------------------------------------------------------------ verify


def cmd_verify(args) -> int:
    try:
        text = Path(args.book).read_text()
    except OSError as exc:
        raise ConfigError(str(exc)) from None
    try:
        book = parse_book(text)
    except BookSyntaxError as exc:
        print(f"REJECT {args.book}: {exc}")
        return EXIT_VERIFY
    if args.game:
        reports = []
        for g in _games(args):
            for spec in g.specs():
                reports.append((spec.header, verify_book(book, spec)))
    else:
        reports = [(f"rc(C4,P{g.n},{g.start},{g.v},{g.e})", rep) for g, rep in verify_text(text)]
        if not reports:
            print(f"REJECT {args.book}: no winning game to verify")
            return EXIT_VERIFY
    ok = True
    for header, rep in reports:
        print(f"{'ACCEPT' if rep.accepted else 'REJECT'} {header}: {rep}")
        ok &= rep.accepted
    return EXIT_OK if ok else EXIT_VERIFY


# -------------------------------------------------------------- engine-sim


def cmd_engine_sim(args) -> int:
    from .harness import engine_builder, engine_sweep, make_painter, rr_win_ok, run_match

    books = args.books_dir
    if not Path(books).is_dir():
        raise ConfigError(f"books directory {books} not found (run `c4pn solve` first)")
    if args.sweep_n:
        ns = _sweep_range(args.sweep_n)
        t0 = time.perf_counter()
        res = engine_sweep(ns, books, seeds=args.seeds, threads=args.threads, seed0=args.seed)
        worst = {}
        for r in res:
            worst.setdefault(r.n, []).append(r)
        failures = [r for r in res if not r.won]
        for n, rs in worst.items():
            lost = sum(not r.won for r in rs)
            print(f"n={n}: {len(rs)} games, {lost} lost, max rounds {max(r.rounds for r in rs)} (bound {2 * n - 2})")
        for r in failures[:20]:
            print(f"FAIL n={r.n} {r.painter}: {r.outcome} after {r.rounds} rounds {r.diagnostic}")
        print(f"{len(res)} games in {time.perf_counter() - t0:.1f}s, {len(failures)} failures")
        return EXIT_OK if not failures else EXIT_INTERNAL
    if not args.game:
        raise ConfigError("engine-sim needs --sweep-n a..b or --game n=..")
    spec = _rr_spec(args.game[0])
    try:
        painter = make_painter(args.painter, seed=args.seed, t=args.t, n=spec.n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    tr = run_match(engine_builder(spec, books), painter, spec)
    for rec in tr.records:
        print(rec.line())
    ok = rr_win_ok(tr)
    print(f"{tr.outcome} after {tr.rounds} rounds (bound {2 * spec.n - 2 - spec.start.n_edges}) {tr.diagnostic}".rstrip())
    if args.transcript:
        tr.save(args.transcript)
    return EXIT_OK if ok else EXIT_INTERNAL


# -------------------------------------------------------------------- play


def _show(pos: ColouredGraph) -> str:
    fmt = lambda es: " ".join(f"{a}-{b}" for a, b in es) or "-"  # noqa: E731
    return f"  blue: {fmt(pos.edges(BLUE))}\n  red:  {fmt(pos.edges(RED))}"


class HumanPainter:
    """Reads r, b or q from a stream for every selected edge."""

    name = "human"

    def __init__(self, stdin, stdout):
        self.stdin, self.stdout = stdin, stdout

    def choose(self, pos: ColouredGraph, edge: Edge, ruleset: Ruleset, rnd: int) -> str:
        from .harness import StopMatch

        out = self.stdout
        print(f"round {rnd}\n{_show(pos)}", file=out)
        while True:
            print(f"Builder selects {edge[0]}-{edge[1]}; colour [r/b/q]: ", end="", file=out, flush=True)
            line = self.stdin.readline()
            if not line:
                raise StopMatch()
            ans = line.strip().lower()
            if ans in ("q", "quit"):
                raise StopMatch()
            if ans not in (RED, BLUE):
                print("please answer r, b or q", file=out)
                continue
            if not painter_may_colour(pos, edge, ans, ruleset):
                print("red here would close a red C4, which the rules forbid", file=out)
                continue
            return ans


def cmd_play(args, stdin=None, stdout=None) -> int:
    from .harness import engine_builder, run_match

    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    spec = _rr_spec(args.game[0] if args.game else "n=14")
    if args.builder == "book" and spec.n > 13:
        raise ConfigError("the book Builder covers n <= 13; use --builder engine")
    if not Path(args.books_dir).is_dir():
        raise ConfigError(f"books directory {args.books_dir} not found (run `c4pn solve` first)")
    builder = engine_builder(spec, args.books_dir)
    tr = run_match(builder, HumanPainter(stdin, stdout), spec)
    pos = tr.final_position()
    print(f"final position\n{_show(pos)}", file=stdout)
    print(f"{tr.outcome} after {tr.rounds} rounds {tr.diagnostic}".rstrip(), file=stdout)
    path = args.transcript or "play_transcript.txt"
    tr.save(path)
    print(f"transcript saved to {path}", file=stdout)
    return EXIT_INTERNAL if tr.outcome == "aborted" else EXIT_OK


# ------------------------------------------------------------------- bench


def cmd_bench(args) -> int:
    from .harness import engine_sweep
    from .solver import run_game_series

    games = [g for g in _games(args) if g.n <= args.max_n]
    t0 = time.perf_counter()
    run = run_game_series(games, None, hints=not args.no_hints)
    dt = time.perf_counter() - t0
    total = sum(r.stats.total_positions for r in run.results)
    print(f"solver: {len(run.results)} games up to n={args.max_n}, {total} positions in {dt:.2f}s ({total / max(dt, 1e-9):.0f}/s)")
    if Path(args.books_dir).is_dir():
        ns = _sweep_range(args.sweep_n) if args.sweep_n else range(14, 21)
        t0 = time.perf_counter()
        res = engine_sweep(ns, args.books_dir, seeds=args.seeds, threads=args.threads, seed0=args.seed)
        dt = time.perf_counter() - t0
        rounds = sum(r.rounds for r in res)
        print(f"engine: {len(res)} games, {rounds} rounds in {dt:.2f}s ({rounds / max(dt, 1e-9):.0f} rounds/s)")
    else:
        print(f"engine: skipped, no books in {args.books_dir}")
    return EXIT_OK


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="c4pn", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, books=True):
        sp.add_argument("--config", help="series config file (default: the shipped default series)")
        sp.add_argument("--game", action="append", help="n=..,v=..,e=..[,start=..]; repeatable, replaces --config")
        if books:
            sp.add_argument("--books-dir", default="books", help="directory of book files (default: books)")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("solve", help="solve a series and write one book per game")
    common(s)
    s.add_argument("--no-hints", action="store_true", help="do not pass moves from game to game")
    s.add_argument("--no-emit", action="store_true", help="solve only, write no books")
    s.add_argument("--verify", action="store_true", help="verify every book after writing it")
    s.add_argument("--no-tt", action="store_true", help=argparse.SUPPRESS)
    s.add_argument("--no-budget-prune", action="store_true", help=argparse.SUPPRESS)
    s.add_argument("--no-spare", action="store_true", help=argparse.SUPPRESS)

    s = sub.add_parser("verify", help="check a book file")
    s.add_argument("book")
    common(s, books=False)

    s = sub.add_parser("engine-sim", help="run the inductive engine against Painter policies")
    common(s)
    s.add_argument("--sweep-n", help="a..b: full sweep for every n in the range")
    s.add_argument("--seeds", type=int, default=100, help="random Painters per n in a sweep")
    s.add_argument("--painter", default="allRed", help="allRed, uniformRandom or firstBlueAt")
    s.add_argument("--t", type=int, default=1, help="round of the first blue edge for firstBlueAt")
    s.add_argument("--transcript", help="save the single-game transcript here")

    s = sub.add_parser("play", help="colour the engine's edges yourself")
    common(s)
    s.add_argument("--builder", choices=("engine", "book"), default="engine")
    s.add_argument("--transcript", help="where to save the transcript (default: play_transcript.txt)")

    s = sub.add_parser("bench", help="time the solver and the engine")
    common(s)
    s.add_argument("--no-hints", action="store_true")
    s.add_argument("--max-n", type=int, default=9, help="largest series game to solve")
    s.add_argument("--sweep-n", help="a..b for the engine part (default 14..20)")
    s.add_argument("--seeds", type=int, default=10)
    return p


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "engine-sim": cmd_engine_sim,
    "play": cmd_play,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    from .engine import BookError, EngineError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(asctime)s %(message)s")
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InternalError, EngineError, BookError, AssertionError) as exc:
        print(f"internal invariant violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
