"""Red butterflies, their forcing plans and the butterfly endgames.

A butterfly is stored with centre ``c0`` (arm ``c0-p0-q0``, wing ``wing0``)
and centre ``c1`` (arm ``c1-p1-q1``, wing ``wing1``).  In the forcing graph
naming these are u0, u2, u4, x_i and u1, u3, u5, y_i.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..graph import BLUE, RED, ColouredGraph, Edge
from .hamilton import hamilton_path


class ButterflyError(ValueError):
    pass


@dataclass(frozen=True)
class Butterfly:
    c0: int
    c1: int
    arm0: tuple[int, int]
    arm1: tuple[int, int]
    wing0: tuple[int, ...]
    wing1: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.wing0), len(self.wing1)

    def swapped(self) -> Butterfly:
        return Butterfly(self.c1, self.c0, self.arm1, self.arm0, self.wing1, self.wing0)

    def vertices(self) -> list[int]:
        return [self.c0, self.c1, *self.arm0, *self.arm1, *self.wing0, *self.wing1]

    def edges(self) -> list[Edge]:
        (p0, q0), (p1, q1) = self.arm0, self.arm1
        out = [(self.c0, self.c1), (self.c0, p0), (p0, q0), (self.c1, p1), (p1, q1)]
        out += [(self.c0, x) for x in self.wing0]
        out += [(self.c1, y) for y in self.wing1]
        return out

    def without_leaf(self, leaf: int) -> Butterfly:
        if leaf in self.wing0:
            return replace(self, wing0=tuple(x for x in self.wing0 if x != leaf))
        if leaf in self.wing1:
            return replace(self, wing1=tuple(y for y in self.wing1 if y != leaf))
        raise ButterflyError(f"{leaf} is not a wing leaf")

    def roles(self, last0: int | None = None, last1: int | None = None) -> dict[str, int]:
        """Forcing-graph names to vertices; ``last0``/``last1`` become x_{s-1}/y_{s-1}."""
        w0 = [x for x in self.wing0 if x != last0] + ([last0] if last0 is not None else [])
        w1 = [y for y in self.wing1 if y != last1] + ([last1] if last1 is not None else [])
        if len(w0) != len(self.wing0) or len(w1) != len(self.wing1):
            raise ButterflyError("chosen end is not a leaf of the right wing")
        names = {"u0": self.c0, "u1": self.c1, "u2": self.arm0[0], "u4": self.arm0[1],
                 "u3": self.arm1[0], "u5": self.arm1[1]}
        names.update({f"x{i}": x for i, x in enumerate(w0)})
        names.update({f"y{i}": y for i, y in enumerate(w1)})
        return names

    def check_red(self, board: ColouredGraph) -> None:
        if len(set(self.vertices())) != len(self.vertices()):
            raise ButterflyError("butterfly vertices repeat")
        if self.sizes[0] != self.sizes[1]:
            raise ButterflyError(f"wings {self.sizes} are unequal")
        for a, b in self.edges():
            if board.colour_of(a, b) != RED:
                raise ButterflyError(f"butterfly edge {a}-{b} is not red")


def butterfly_force_plan(
    bfly: Butterfly,
    variant: str,
    end0: int | None = None,
    end1: int | None = None,
    required: Edge | None = None,
) -> tuple[list[Edge], tuple[int, int]]:
    """Edges Builder selects to force a blue path, and the path's ends.

    ``i``: spanning path with ends c0, c1.  ``ii``: path on all but c1 with
    ends c0 and a leaf of wing1 (``end1`` if given).  ``iii``: path on all
    but the centres with ends ``end0`` in wing0 and ``end1`` in wing1.
    With ``required`` (variant i only) the inner path must use that
    leaf-to-leaf edge, which is left out of the plan.
    """
    s = bfly.sizes[0]
    if bfly.sizes[1] != s:
        raise ButterflyError(f"wings {bfly.sizes} are unequal")
    if variant in ("ii", "iii") and s < 2:
        raise ButterflyError("variants ii and iii need wings of size at least 2")
    if s < 1:
        raise ButterflyError("empty wings")
    req_names = None
    if required is not None:
        if variant != "i":
            raise ButterflyError("a required edge is only supported for variant i")
        a, b = required
        if a in bfly.wing1:
            a, b = b, a
        names = bfly.roles(a, b)
        req_names = (f"x{s - 1}", f"y{s - 1}")
    else:
        names = bfly.roles(end0, end1)
    if variant == "i":
        inner = hamilton_path(s, "u4", "u5", req_names)
        tail = [("u5", "u0"), ("u4", "u1")]
        ends = (bfly.c0, bfly.c1)
    elif variant == "ii":
        inner = hamilton_path(s, "u5", f"y{s - 1}")
        tail = [("u5", "u0")]
        ends = (bfly.c0, names[f"y{s - 1}"])
    elif variant == "iii":
        inner = hamilton_path(s, f"x{s - 1}", f"y{s - 1}")
        tail = []
        ends = (names[f"x{s - 1}"], names[f"y{s - 1}"])
    else:
        raise ButterflyError(f"unknown variant {variant!r}")
    steps = list(zip(inner, inner[1:])) + tail
    if req_names is not None:
        steps = [st for st in steps if set(st) != set(req_names)]
    return [(names[a], names[b]) for a, b in steps], ends


# ------------------------------------------------------------ endgames


@dataclass(frozen=True)
class MaloCase:
    case: str
    c1: int
    c2: int
    blue1: tuple[int, ...]  # blue path through c1 as (a1, c1, b1) or (c1, b1)
    blue2: tuple[int, ...]
    red_bfly: Butterfly  # centred (c1, c2)


def _blue_path_at(board: ColouredGraph, c: int) -> tuple[int, ...]:
    nbrs = [w for w in range(board.used_vertices) if board.blue_row(c) >> w & 1]
    if len(nbrs) == 0:
        return (c,)
    if len(nbrs) == 1:
        return (c, nbrs[0])
    if len(nbrs) == 2:
        return (nbrs[0], c, nbrs[1])
    raise ButterflyError(f"centre {c} has blue degree {len(nbrs)}")


def malo_dispatch(board: ColouredGraph, centres: tuple[int, int], arms: dict[int, tuple[int, int]],
                  wings: dict[int, list[int]]) -> MaloCase:
    """Classify a coloured butterfly endgame into one of the five cases.

    ``wings[c]`` lists every pendant vertex at centre ``c``, of either colour.
    """
    ca, cb = centres
    deg_b = {c: sum(board.colour_of(c, w) == BLUE for w in wings[c]) for c in centres}
    size = {c: len(wings[c]) for c in centres}
    # c1 carries more blue edges; on a tie it has the larger wing
    if (deg_b[cb], size[cb]) > (deg_b[ca], size[ca]):
        ca, cb = cb, ca
    c1, c2 = ca, cb
    s_diff = size[c1] - size[c2]
    red_wing = {c: tuple(w for w in wings[c] if board.colour_of(c, w) == RED) for c in centres}
    if s_diff not in (0, 1) or not 1 <= deg_b[c1] <= 2 or deg_b[c2] > deg_b[c1]:
        raise ButterflyError(f"hypotheses fail: sizes {size}, blue degrees {deg_b}")
    if min(len(red_wing[c1]), len(red_wing[c2])) < 2:
        raise ButterflyError("every wing needs two red edges")
    if deg_b[c1] == deg_b[c2] == 2 and s_diff != 0:
        raise ButterflyError("two blue edges in both wings need equal wings")
    for c in centres:
        for a, b in ((c, arms[c][0]), arms[c], (c1, c2)):
            if board.colour_of(a, b) != RED:
                raise ButterflyError(f"core edge {a}-{b} is not red")
    row = (s_diff, deg_b[c1], deg_b[c2])
    table = {
        (0, 1, 0): "iii", (0, 1, 1): "i", (0, 2, 0): "v", (0, 2, 1): "iii", (0, 2, 2): "ii",
        (1, 1, 0): "i", (1, 1, 1): "iv", (1, 2, 0): "iii", (1, 2, 1): "ii",
    }
    case = table[row]
    bfly = Butterfly(c1, c2, arms[c1], arms[c2], red_wing[c1], red_wing[c2])
    return MaloCase(case, c1, c2, _blue_path_at(board, c1), _blue_path_at(board, c2), bfly)
