"""Blue Hamilton paths in the lacing graph used by the forcing plans.

    python demos/lacing.py [s]

For s = 1 only the ends u4, u5 work; from s = 2 on every pair of ends taken
from opposite parts does.
"""

import sys

from c4pn.engine import check_lacing_path, hamilton_path
from c4pn.engine.hamilton import lacing_parts

s = int(sys.argv[1]) if len(sys.argv) > 1 else 3

print("s=1:", " ".join(hamilton_path(1, "u4", "u5")))
left, right = lacing_parts(s)
print(f"s={s}: parts {left} / {right}")
for a in left[:2]:
    for b in right[:2]:
        path = hamilton_path(s, a, b)
        check_lacing_path(s, path, a, b)
        print(f"  {a} .. {b}: {' '.join(path)}")
