import pytest

from c4pn.graph import BLUE, RED, ColouredGraph
from c4pn.rules import GameSpec, StartPosition, TerminalStatus, is_legal_builder_move, terminal_status
from c4pn.solver import Solver, book_filename, run_game_series, solve_game
from c4pn.rules import parse_game
from oracles import reference_rc

TAGS = ("empty", "b", "br", "brr", "brb", "brrb")


def small_specs(max_n=5, extra_v=2):
    for n in range(3, max_n + 1):
        for v in range(n, n + extra_v):
            for e in range(n - 1, 2 * n):
                for tag in TAGS:
                    st = StartPosition.named(tag)
                    if st.max_vertex < v and e >= st.n_edges:
                        yield GameSpec(n, v, e, st)


def test_unpruned_solver_matches_plain_minimax():
    for spec in small_specs():
        ref = reference_rc(spec)
        bare = Solver(spec.n, spec.v, spec.e, use_spare=False, use_budget_prune=False)
        full = Solver(spec.n, spec.v, spec.e)
        assert int(bare.solve_builder(spec.start.graph())) == ref, spec.header
        assert int(full.solve_builder(spec.start.graph())) == ref, spec.header


def test_spare_vertex_rule_is_off_when_v_equals_n():
    # with v = n every label is needed for the path; a spare never exists
    spec = GameSpec(4, 4, 6, StartPosition.named("brb"))
    assert reference_rc(spec) == 1
    assert Solver(4, 4, 6).solve_builder(spec.start.graph())


def test_winning_moves_are_legal_and_winning():
    spec = GameSpec(5, 6, 9)
    solver = Solver(5, 6, 9)
    pos = ColouredGraph()
    assert solver.solve_builder(pos)
    # follow the stored strategy against a Painter that always answers red when it can
    for _ in range(spec.e):
        mv = solver.winning_move(pos)
        assert mv is not None and is_legal_builder_move(pos, spec, mv)
        assert solver.solve_painter(pos, mv)
        colour = RED
        after = pos.add(*mv, colour)
        status = terminal_status(after, spec, mv, colour)
        if status is TerminalStatus.ONGOING:
            pos = after
            continue
        assert status.builder_won
        break


def test_solve_painter_on_a_forced_edge():
    # red path 0-2-3-1 makes red 0-1 a C4, so only blue matters
    solver = Solver(4, 5, 8)
    pos = ColouredGraph.from_edges([], [(0, 2), (2, 3), (3, 1)])
    assert solver.solve_painter(pos, (0, 1)) == solver.solve_builder(pos.add(0, 1, BLUE))


def test_no_hints_gives_the_same_values():
    games = [parse_game(t) for t in ("n=3,v=4,e=6", "n=4,v=5,e=8", "n=5,v=6,e=9", "n=6,v=7,e=11")]
    hinted = run_game_series(games, None, hints=True).results
    plain = run_game_series(games, None, hints=False).results
    assert [r.rc for r in hinted] == [r.rc for r in plain]
    assert [r.spec for r in hinted] == [r.spec for r in plain]


def test_stats_are_counted():
    results, solver = solve_game(parse_game("n=5,v=6,e=9"))
    assert all(r.stats.unique_positions <= r.stats.total_positions for r in results)
    assert results[0].stats.total_positions > 0
    assert len(solver.table) > 0


def test_book_filename_and_vertex_cap():
    assert book_filename(parse_game("n=7,v=8,e=12")) == "C4P7_8_12.txt"
    with pytest.raises(ValueError):
        Solver(20, 40, 38)
