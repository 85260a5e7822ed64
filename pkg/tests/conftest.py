import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import pytest

from c4pn.rules import default_series
from c4pn.solver import GameResult, run_game_series

DATA = Path(__file__).parent / "data"


@dataclass
class SeriesSolve:
    books_dir: Path
    results: list[GameResult] = field(default_factory=list)
    seconds: float = 0.0


@pytest.fixture(scope="session")
def series_run(tmp_path_factory) -> SeriesSolve:
    """The default series, solved once per session with books written out."""
    out = tmp_path_factory.mktemp("books")
    t0 = time.perf_counter()
    run = run_game_series(default_series(), out)
    return SeriesSolve(out, run.results, time.perf_counter() - t0)


@pytest.fixture(scope="session")
def books_dir(request) -> Path:
    """Books for the engine tests; C4PN_BOOKS may point at a ready-made set."""
    ready = os.environ.get("C4PN_BOOKS")
    if ready:
        return Path(ready)
    return request.getfixturevalue("series_run").books_dir


@pytest.fixture(scope="session")
def golden_text() -> str:
    return (DATA / "golden_C4P3_4_6.txt").read_text()


_REPORT: dict[int, str] = {}


def report(criterion: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    _REPORT[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_REPORT):
        terminalreporter.write_line(_REPORT[k])
