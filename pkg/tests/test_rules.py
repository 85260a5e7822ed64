import pytest

from c4pn.cli import default_config
from c4pn.graph import BLUE, RED, ColouredGraph
from c4pn.rules import (
    SERIES_STARTS,
    GameSpec,
    Ruleset,
    StartPosition,
    TerminalStatus,
    budget_prune,
    is_legal_builder_move,
    legal_builder_moves,
    load_series,
    painter_may_colour,
    default_series,
    parse_game,
    spare_blue_vertex_exists,
    terminal_status,
)


def test_named_starts_are_coloured_paths():
    s = StartPosition.named("brrb")
    assert s.blue == ((0, 1), (3, 4)) and s.red == ((1, 2), (2, 3))
    assert s.name == "brrb-path" and s.n_edges == 4
    assert StartPosition.named("∅").tag == "empty"
    assert StartPosition.named("br-path").tag == "br"
    with pytest.raises(ValueError):
        StartPosition.named("rb")


def test_spec_validation():
    with pytest.raises(ValueError):
        GameSpec(3, 3, 6, StartPosition.named("brrb"))
    with pytest.raises(ValueError):
        GameSpec(5, 6, 2, StartPosition.named("brr"))
    rr = GameSpec.rr(14, "br")
    assert rr.ruleset is Ruleset.RR and rr.e == 26


def test_series_constants():
    games = default_series()
    assert [g.v for g in games] == [4, 5, 6, 7, 8, 8, 9, 10, 11, 12, 13, 14]
    assert [(g.n, g.e) for g in games][4:6] == [(7, 13), (7, 12)]
    assert load_series(default_config()) == games


def test_parse_game_defaults_and_explicit_start():
    g = parse_game("n=9")
    assert (g.v, g.e) == (10, 16) and tuple(s.tag for s in g.starts) == SERIES_STARTS
    g = parse_game("n=5,v=6,e=9,start=brb")
    assert [s.tag for s in g.starts] == ["brb"]
    g = parse_game("n=4 v=5 e=8 red=12 blue=01")
    assert g.starts[0].red == ((1, 2),) and g.starts[0].blue == ((0, 1),)
    for bad in ("v=3", "n=4,w=1", "n=4,e=1,start=brrb", "n=4,start=zz"):
        with pytest.raises(ValueError):
            parse_game(bad)


def test_specs_skip_starts_above_the_cap():
    g = parse_game("n=3,v=4,e=6")
    assert [s.start.tag for s in g.specs()] == ["empty", "b", "br", "brr", "brb"]


def test_rrc_builder_moves_respect_the_rules():
    spec = GameSpec(5, 6, 9)
    empty = ColouredGraph()
    assert legal_builder_moves(empty, spec) == [(0, 1)]
    pos = ColouredGraph.from_edges([(0, 1), (1, 2)], [(0, 3)])
    moves = legal_builder_moves(pos, spec)
    assert all(is_legal_builder_move(pos, spec, m) for m in moves)
    # vertex 1 already has two blue edges
    assert not any(1 in m for m in moves)
    # blue 0-2 would close a blue cycle
    assert (0, 2) not in moves
    # only the single next label may be introduced, and only next to the board
    assert (0, 4) in moves and (0, 5) not in moves
    assert not is_legal_builder_move(pos, spec, (4, 5))


def test_rrc_vertex_cap():
    spec = GameSpec(3, 4, 6)
    pos = ColouredGraph.from_edges([], [(0, 1), (1, 2), (2, 3)])
    assert all(max(m) < 4 for m in legal_builder_moves(pos, spec))


def test_terminal_status_rrc():
    spec = GameSpec(4, 5, 8)
    red3 = ColouredGraph.from_edges([], [(0, 1), (1, 2), (2, 3)])
    after = red3.add(0, 3, RED)
    assert terminal_status(after, spec, (0, 3), RED) is TerminalStatus.BUILDER_WIN_RED_C4
    path = ColouredGraph.from_edges([(0, 1), (1, 2), (2, 3)])
    assert terminal_status(path, spec, (2, 3), BLUE) is TerminalStatus.BUILDER_WIN_BLUE_PATH
    full = ColouredGraph.from_edges([(0, 1)], [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3)])
    assert terminal_status(full, spec, (2, 3), RED) is TerminalStatus.PAINTER_WIN_BUDGET
    assert terminal_status(path.remove(2, 3), spec, (1, 2), BLUE) is TerminalStatus.ONGOING


def test_terminal_status_rr():
    spec = GameSpec.rr(4)
    assert painter_may_colour(ColouredGraph.from_edges([], [(0, 1), (1, 2), (2, 3)]), (0, 3), RED, Ruleset.RR) is False
    assert painter_may_colour(ColouredGraph.from_edges([], [(0, 1), (1, 2), (2, 3)]), (0, 3), RED, Ruleset.RRC) is True
    # three blue edges that are not a path: blue count reached, so Builder can no longer win
    star = ColouredGraph.from_edges([(0, 1), (0, 2), (0, 3)])
    assert terminal_status(star, spec, (0, 3), BLUE) is TerminalStatus.PAINTER_WIN_PRUNED
    # a blue triangle plus pendant edge must not hang the path test
    tri = ColouredGraph.from_edges([(0, 1), (1, 2), (0, 2)])
    assert terminal_status(tri, GameSpec.rr(4), (0, 2), BLUE) is TerminalStatus.PAINTER_WIN_PRUNED
    assert is_legal_builder_move(star, spec, (5, 9))


def test_prunes():
    spec = GameSpec(4, 5, 8)
    assert budget_prune(ColouredGraph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4)]), spec)
    assert budget_prune(ColouredGraph.from_edges([], [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)]), spec)
    assert not budget_prune(ColouredGraph.from_edges([(0, 1)], [(1, 2)]), spec)
    pos = ColouredGraph.from_edges([(0, 1), (2, 3), (3, 4)])
    assert not spare_blue_vertex_exists(pos, spec)
    assert spare_blue_vertex_exists(ColouredGraph.from_edges([(0, 1)]), spec)
    assert spare_blue_vertex_exists(pos, GameSpec(5, 5, 8))
