"""Watch the inductive Builder win one game of red C4 against blue P_n.

    python demos/engine_game.py BOOKS_DIR [n] [t]

Painter answers red until round t, then blue once, then red whenever the
rules allow.  The engine needs the base-case books (c4pn solve) for the
contractions it makes.
"""

import sys

from c4pn.engine import BookLibrary
from c4pn.harness import FirstBlueAt, engine_builder, rr_win_ok, run_match
from c4pn.rules import GameSpec

books = sys.argv[1] if len(sys.argv) > 1 else "books"
n = int(sys.argv[2]) if len(sys.argv) > 2 else 16
t = int(sys.argv[3]) if len(sys.argv) > 3 else 7

spec = GameSpec.rr(n)
builder = engine_builder(spec, BookLibrary(books))
tr = run_match(builder, FirstBlueAt(t), spec)
for rec in tr.records:
    print(rec.line())
print(f"\n{tr.outcome} after {tr.rounds} of at most {2 * n - 2} rounds; blue path ok: {rr_win_ok(tr)}")

for c in builder.state.contractions:
    print(f"contracted {c.k} inner vertices at {c.where}: m = {c.m} (bound {2 * c.k + 1})")
