import pytest

from c4pn.engine.butterfly import Butterfly, ButterflyError, butterfly_force_plan, malo_dispatch
from c4pn.graph import BLUE, RED, ColouredGraph, blue_path_vertices, has_c4_with


def make_butterfly(s: int, t: int | None = None) -> Butterfly:
    t = s if t is None else t
    wing0 = tuple(range(6, 6 + s))
    wing1 = tuple(range(6 + s, 6 + s + t))
    return Butterfly(0, 1, (2, 4), (3, 5), wing0, wing1)


def red_board(b: Butterfly) -> ColouredGraph:
    return ColouredGraph.from_edges([], b.edges())


def play_plan(board: ColouredGraph, steps) -> ColouredGraph:
    """Colour the plan blue, checking that red was never an option."""
    for a, b in steps:
        assert board.colour_of(a, b) is None, (a, b)
        assert has_c4_with(board.red, a, b), f"{a}-{b} is not forced"
        board = board.add(a, b, BLUE)
    return board


@pytest.mark.parametrize("s", range(1, 9))
def test_variant_i_spans_the_butterfly(s):
    b = make_butterfly(s)
    steps, ends = butterfly_force_plan(b, "i")
    end = play_plan(red_board(b), steps)
    seq = blue_path_vertices(end.blue)
    assert seq is not None and {seq[0], seq[-1]} == set(ends) == {0, 1}
    assert sorted(seq) == sorted(b.vertices())
    assert len(steps) == len(b.vertices()) - 1


@pytest.mark.parametrize("s", range(2, 9))
def test_variants_ii_and_iii(s):
    b = make_butterfly(s)
    y_last = b.wing1[0]
    steps, ends = butterfly_force_plan(b, "ii", end1=y_last)
    seq = blue_path_vertices(play_plan(red_board(b), steps).blue)
    assert set(ends) == {0, y_last} and {seq[0], seq[-1]} == set(ends)
    assert sorted(seq) == sorted(v for v in b.vertices() if v != 1)

    x_last = b.wing0[-1]
    steps, ends = butterfly_force_plan(b, "iii", end0=x_last, end1=y_last)
    seq = blue_path_vertices(play_plan(red_board(b), steps).blue)
    assert {seq[0], seq[-1]} == {x_last, y_last} == set(ends)
    assert sorted(seq) == sorted(v for v in b.vertices() if v not in (0, 1))


@pytest.mark.parametrize("s", range(2, 7))
def test_required_leaf_edge_is_left_to_the_caller(s):
    b = make_butterfly(s)
    x, y = b.wing0[0], b.wing1[1]
    board = red_board(b).add(x, y, BLUE)
    steps, ends = butterfly_force_plan(b, "i", required=(x, y))
    assert (x, y) not in steps and (y, x) not in steps
    seq = blue_path_vertices(play_plan(board, steps).blue)
    assert {seq[0], seq[-1]} == {0, 1} and sorted(seq) == sorted(b.vertices())


def test_plan_preconditions():
    with pytest.raises(ButterflyError):
        butterfly_force_plan(make_butterfly(3, 2), "i")
    with pytest.raises(ButterflyError):
        butterfly_force_plan(make_butterfly(1), "ii")
    with pytest.raises(ButterflyError):
        butterfly_force_plan(make_butterfly(2), "iv")
    with pytest.raises(ButterflyError):
        make_butterfly(3, 2).check_red(red_board(make_butterfly(3, 2)))
    b = make_butterfly(2)
    with pytest.raises(ButterflyError):
        b.check_red(red_board(b).remove(0, 1))
    b.check_red(red_board(b))


def test_roles_and_leaf_removal():
    b = make_butterfly(3)
    names = b.roles(last0=6)
    assert names["x2"] == 6 and names["u4"] == 4 and names["u5"] == 5
    assert b.without_leaf(7).wing0 == (6, 8)
    assert b.swapped().c0 == 1
    with pytest.raises(ButterflyError):
        b.without_leaf(2)


def endgame_board(size1: int, size2: int, blue1: int, blue2: int):
    """Centres 0 and 1, arms 0-2-4 and 1-3-5, the first pendants of each wing blue."""
    w1 = list(range(6, 6 + size1))
    w2 = list(range(6 + size1, 6 + size1 + size2))
    red = [(0, 1), (0, 2), (2, 4), (1, 3), (3, 5)]
    blue = []
    for c, wing, nb in ((0, w1, blue1), (1, w2, blue2)):
        for i, w in enumerate(wing):
            (blue if i < nb else red).append((c, w))
    board = ColouredGraph.from_edges(blue, red)
    return board, {0: (2, 4), 1: (3, 5)}, {0: w1, 1: w2}


ROWS = [
    # (s1 - s2, blue at c1, blue at c2) -> case
    ((0, 1, 0), "iii"), ((0, 1, 1), "i"), ((0, 2, 0), "v"), ((0, 2, 1), "iii"), ((0, 2, 2), "ii"),
    ((1, 1, 0), "i"), ((1, 1, 1), "iv"), ((1, 2, 0), "iii"), ((1, 2, 1), "ii"),
]


@pytest.mark.parametrize("row, case", ROWS)
def test_dispatch_rows(row, case):
    diff, b1, b2 = row
    board, arms, wings = endgame_board(4 + diff, 4, b1, b2)
    mc = malo_dispatch(board, (0, 1), arms, wings)
    assert (mc.case, mc.c1, mc.c2) == (case, 0, 1)
    # the order the centres are given in does not matter
    board2, arms2, wings2 = endgame_board(4, 4 + diff, b2, b1)
    mc2 = malo_dispatch(board2, (0, 1), arms2, wings2)
    if (b1, 4 + diff) != (b2, 4):
        assert (mc2.case, mc2.c1) == (case, 1)
    assert len(mc.red_bfly.wing0) == 4 + diff - b1 and len(mc.red_bfly.wing1) == 4 - b2


def test_dispatch_rejects_broken_hypotheses():
    for sizes, blues in [((6, 4), (1, 0)), ((4, 4), (0, 0)), ((4, 4), (3, 0)), ((3, 3), (2, 2)), ((5, 4), (2, 2))]:
        board, arms, wings = endgame_board(*sizes, *blues)
        with pytest.raises(ButterflyError):
            malo_dispatch(board, (0, 1), arms, wings)
