"""Solve the smallest games, print the book for P3 and check it independently.

Run from the repository root:  python demos/small_games.py
The first solve compiles the search kernel, which takes a few seconds.
"""

from c4pn.certificate import emit_book, verify_text
from c4pn.rules import GameSpec, StartPosition, parse_game
from c4pn.solver import Solver

# Who wins from the empty board, for a few vertex caps and budgets?
for n, v, e in [(3, 4, 5), (3, 4, 6), (4, 5, 7), (4, 5, 8), (5, 6, 9)]:
    solver = Solver(n, v, e)
    won = solver.solve_builder(StartPosition.named("empty").graph())
    spec = GameSpec(n, v, e)
    print(f"{spec.header}={int(won)}  positions visited: {solver.stats.total_positions}")

# The strategy book for P3 with 4 vertices and 6 rounds, all five starts.
text = emit_book(parse_game("n=3,v=4,e=6"))
print()
print(text, end="")

# The verifier replays every Painter answer and never looks at the solver.
print()
for game, report in verify_text(text):
    print(f"{game.start:10s} {report}")
