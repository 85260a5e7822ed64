import pytest

from c4pn.engine import BookLibrary
from c4pn.graph import BLUE, RED, ColouredGraph, has_c4_with
from c4pn.harness import (
    AllRed,
    FirstBlueAt,
    Record,
    SolverBuilder,
    SolverOptimal,
    Transcript,
    UniformRandom,
    engine_builder,
    engine_sweep,
    make_painter,
    parse_spec_line,
    replay,
    rr_win_ok,
    run_match,
    spec_line,
    sweep_painters,
)
from c4pn.rules import GameSpec, Ruleset, StartPosition, TerminalStatus

RED3 = ColouredGraph.from_edges([], [(0, 1), (1, 2), (2, 3)])


def test_policies_never_break_rr():
    edge = (0, 3)
    assert AllRed().choose(RED3, edge, Ruleset.RR, 1) == BLUE
    assert AllRed().choose(RED3, edge, Ruleset.RRC, 1) == RED
    assert FirstBlueAt(2).choose(RED3, edge, Ruleset.RR, 5) == BLUE
    assert FirstBlueAt(2).choose(RED3, (0, 4), Ruleset.RR, 2) == BLUE
    rnd = UniformRandom(3)
    assert all(rnd.choose(RED3, edge, Ruleset.RR, k) == BLUE for k in range(50))
    assert {rnd.choose(RED3, (0, 4), Ruleset.RR, k) for k in range(50)} == {RED, BLUE}


def test_random_policy_is_seeded():
    a = [UniformRandom(11).choose(RED3, (0, 4), Ruleset.RR, 1) for _ in range(5)]
    p, q = UniformRandom(11), UniformRandom(11)
    assert [p.choose(RED3, (0, 4), Ruleset.RR, k) for k in range(20)] == [
        q.choose(RED3, (0, 4), Ruleset.RR, k) for k in range(20)
    ]
    assert len(set(a)) == 1


def test_make_painter():
    assert isinstance(make_painter("allRed"), AllRed)
    assert make_painter("firstBlueAt", t=4).t == 4
    with pytest.raises(ValueError):
        make_painter("greedy")
    with pytest.raises(ValueError):
        SolverOptimal(9)


def test_spec_line_round_trip():
    for spec in (GameSpec.rr(20), GameSpec.rr(14, "brb"), GameSpec(7, 8, 12),
                 GameSpec(4, 5, 8, StartPosition.explicit([(1, 2)], [(0, 1)]))):
        assert parse_spec_line(spec_line(spec)) == spec


def test_engine_vs_all_red_n20_and_replay(books_dir, tmp_path):
    spec = GameSpec.rr(20)
    tr = run_match(engine_builder(spec, books_dir), AllRed(), spec)
    assert tr.outcome == TerminalStatus.BUILDER_WIN_BLUE_PATH.value
    assert tr.rounds == 38 and rr_win_ok(tr)
    path = tmp_path / "t.txt"
    tr.save(path)
    back = Transcript.parse(path.read_text())
    assert back.records == tr.records and back.outcome == tr.outcome and back.spec == spec
    again = replay(back)
    assert (again.outcome, again.rounds) == (tr.outcome, tr.rounds)
    assert back.serialize() == tr.serialize()


def test_replay_catches_tampering(books_dir):
    spec = GameSpec.rr(14)
    tr = run_match(engine_builder(spec, books_dir), AllRed(), spec)
    # colour a forced edge red instead
    bad = list(tr.records)
    for k, r in enumerate(bad):
        pos = Transcript(spec, bad[:k]).final_position()
        if has_c4_with(pos.red, *r.edge):
            bad[k] = Record(r.round, r.edge, RED, r.phase)
            break
    assert replay(Transcript(spec, bad)).outcome == "aborted"
    dup = list(tr.records[:3]) + [Record(4, tr.records[0].edge, BLUE)]
    assert replay(Transcript(spec, dup)).outcome == "aborted"


class _Cheater:
    def __init__(self, edge):
        self.edge = edge

    def next_move(self, pos):
        return self.edge

    def observe(self, edge, colour):
        pass


class _RedAlways:
    def choose(self, pos, edge, ruleset, rnd):
        return RED


def test_run_match_aborts_illegal_moves():
    spec = GameSpec(4, 5, 8)
    tr = run_match(_Cheater((3, 4)), AllRed(), spec)
    assert tr.outcome == "aborted" and "illegal Builder move" in tr.diagnostic
    spec = GameSpec.rr(4, StartPosition.explicit([(0, 1), (1, 2), (2, 3)], []))
    tr = run_match(_Cheater((0, 3)), _RedAlways(), spec)
    assert tr.outcome == "aborted" and "illegal Painter colour" in tr.diagnostic


def test_builder_errors_become_diagnostics():
    class Broken:
        def next_move(self, pos):
            raise RuntimeError("boom")

    tr = run_match(Broken(), AllRed(), GameSpec.rr(14))
    assert tr.outcome == "aborted" and "boom" in tr.diagnostic


def test_solver_optimal_painter_survives_the_p7_game():
    spec = GameSpec(7, 8, 12)
    painter = SolverOptimal(7, 8, 12)
    tr = run_match(SolverBuilder(spec), painter, spec)
    assert tr.outcome == TerminalStatus.PAINTER_WIN_BUDGET.value and tr.rounds == 12
    spec = GameSpec(7, 8, 13)
    tr = run_match(SolverBuilder(spec), SolverOptimal(7, 8, 13), spec)
    assert tr.builder_won


def test_book_builder_vs_random_all_starts_n13(books_dir):
    lib = BookLibrary(books_dir)
    for start in ("empty", "b", "br", "brr", "brb", "brrb"):
        spec = GameSpec.rr(13, start)
        for seed in range(1000):
            tr = run_match(engine_builder(spec, lib), UniformRandom(seed), spec)
            assert rr_win_ok(tr), (start, seed, tr.outcome, tr.diagnostic)
            assert tr.rounds <= 24 - spec.start.n_edges


def test_sweep_painters_list():
    names = [name for name, _ in sweep_painters(14, 3)]
    assert names[0] == "allRed" and names[-1] == "uniformRandom(2)"
    assert sum(n.startswith("firstBlueAt") for n in names) == 25


def test_small_sweep(books_dir):
    res = engine_sweep(range(14, 17), books_dir, seeds=5, seed0=100)
    assert len(res) == 3 * 1 + (25 + 27 + 29) + 3 * 5
    assert all(r.won for r in res)
    assert all(m == exp for r in res for _, _, m, exp in r.contractions)
