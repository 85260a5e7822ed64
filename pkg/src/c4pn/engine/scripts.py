"""Builder's play after a blue edge appears in Stage 1, as data.

Vertex names follow the Stage-1 figure: the butterfly edges are selected in
the order u0u1, u0u2, u0u3, u1u4, u1u5, u2u6, u4u7, and a name first seen in
a script is a brand-new vertex.  ``T[t]`` is the plan after the first blue
edge appeared in round t.  Every branch ends in one or two contractions with
the value m written next to the path, followed by the residual start path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

STAGE1_EDGES = (
    ("u0", "u1"),
    ("u0", "u2"),
    ("u0", "u3"),
    ("u1", "u4"),
    ("u1", "u5"),
    ("u2", "u6"),
    ("u4", "u7"),
)


@dataclass(frozen=True)
class Select:
    """Builder selects a-b; play continues in the branch of Painter's colour."""

    a: str
    b: str
    blue: "Step"
    red: "Step"
    # the case table leaves this move implicit
    filled: bool = False


@dataclass(frozen=True)
class Force:
    """Edges that close a red C4 when reddened, selected in order."""

    edges: tuple[tuple[str, str], ...]
    then: "Step"


@dataclass(frozen=True)
class Contract:
    """Contract a blue path (names in order) whose interior has value m."""

    path: tuple[str, ...]
    m: int
    then: "Step"


@dataclass(frozen=True)
class Residual:
    """Play the smaller game from the start path ``tag`` on ``seq``."""

    tag: str
    seq: tuple[str, ...]


@dataclass(frozen=True)
class Goto:
    """Continue with another plan; ``names`` maps its names to ours."""

    target: str
    names: dict = field(default_factory=dict)

    def __hash__(self) -> int:
        return hash((self.target, tuple(sorted(self.names.items()))))


Step = Union[Select, Force, Contract, Residual, Goto]


def _f(*pairs: str) -> tuple[tuple[str, str], ...]:
    return tuple((p[:2], p[2:]) for p in pairs)


T: dict[str, Step] = {}

T["7"] = Force(
    _f("u4u2", "u2u5", "u5u3", "u3u6", "u6u1"),
    Contract(("u7", "u4", "u2", "u5", "u3", "u6", "u1"), 11, Residual("br", ("u7", "u1", "u0"))),
)

T["6"] = Force(
    _f("u2u4", "u4u3", "u3u5"),
    Contract(("u6", "u2", "u4", "u3", "u5"), 7, Residual("brr", ("u6", "u5", "u1", "u0"))),
)

T["5"] = Select(
    "u2", "u6",
    red=Force(
        _f("u1u6", "u6u3", "u3u4", "u4u2"),
        Contract(("u5", "u1", "u6", "u3", "u4", "u2"), 9, Residual("br", ("u5", "u2", "u0"))),
    ),
    blue=Force(
        _f("u2u4", "u4u3"),
        Contract(("u6", "u2", "u4", "u3"), 5, Residual("brrb", ("u6", "u3", "u0", "u1", "u5"))),
    ),
)

T["4"] = Select(
    "u1", "u5",
    red=Goto("5", {"u0": "u0", "u1": "u1", "u2": "u2", "u3": "u3", "u4": "u5", "u5": "u4"}),
    blue=Select(
        "u3", "u5",
        blue=Contract(("u4", "u1", "u5", "u3"), 4, Residual("brr", ("u4", "u3", "u0", "u2"))),
        red=Force(
            _f("u5u2"),
            Contract(("u4", "u1", "u5", "u2"), 5, Residual("brr", ("u4", "u2", "u0", "u3"))),
        ),
    ),
)

# round 3, after exactly one of u2u4, u2u5 came back blue (named u2u5)
T["3/one"] = Select(
    "u2", "u6",
    blue=Select(
        "u0", "u5",
        blue=Contract(("u3", "u0", "u5", "u2", "u6"), 7, Residual("b", ("u3", "u6"))),
        red=Force(
            _f("u5u4", "u4u1"),
            Contract(("u6", "u2", "u5", "u4", "u1"), 7, Residual("brb", ("u6", "u1", "u0", "u3"))),
        ),
    ),
    red=Select(
        "u6", "u7",
        red=Force(
            _f("u6u1", "u1u4", "u4u7", "u7u0"),
            Contract(("u3", "u0", "u7", "u4", "u1", "u6"), 9, Residual("brb", ("u3", "u6", "u2", "u5"))),
        ),
        blue=Select(
            "u5", "u0",
            red=Force(
                _f("u6u1", "u1u4", "u4u5"),
                Contract(("u7", "u6", "u1", "u4", "u5", "u2"), 9, Residual("brb", ("u7", "u2", "u0", "u3"))),
            ),
            blue=Force(
                _f("u6u1", "u1u4"),
                Contract(
                    ("u7", "u6", "u1", "u4"), 5,
                    Contract(("u3", "u0", "u5", "u2"), 4, Residual("brb", ("u7", "u4", "u2", "u3"))),
                ),
            ),
        ),
        filled=True,
    ),
)

T["3/both"] = Select(
    "u1", "u3",
    red=Select(
        "u5", "u3",
        red=Force(
            _f("u0u5"),
            Contract(("u4", "u2", "u5", "u0", "u3"), 7, Residual("br", ("u4", "u3", "u1"))),
        ),
        blue=Contract(("u4", "u2", "u5", "u3", "u0"), 6, Residual("br", ("u4", "u0", "u1"))),
    ),
    blue=Select(
        "u0", "u5",
        red=Contract(
            ("u4", "u2", "u5"), 3,
            Contract(("u0", "u3", "u1"), 3, Residual("brb", ("u4", "u5", "u0", "u1"))),
        ),
        blue=Contract(("u4", "u2", "u5", "u0", "u3", "u1"), 7, Residual("b", ("u4", "u1"))),
    ),
)

T["3"] = Select(
    "u2", "u4",
    red=Select(
        "u2", "u5",
        red=Goto("5", {"u0": "u2", "u1": "u0", "u2": "u4", "u3": "u5", "u4": "u1", "u5": "u3"}),
        blue=Goto("3/one"),
    ),
    blue=Select(
        "u2", "u5",
        red=Goto("3/one", {"u4": "u5", "u5": "u4"}),
        blue=Goto("3/both"),
    ),
)

# the starts brb, brr and brrb enter the round-2 plan part way through
T["2/brb"] = Select(
    "u1", "u4",
    red=Select(
        "u4", "u3",
        red=Force(_f("u0u3"), Contract(("u2", "u0", "u3", "u1"), 5, Residual("br", ("u2", "u1", "u4")))),
        blue=Contract(("u1", "u3", "u4"), 3, Residual("brb", ("u2", "u0", "u1", "u4"))),
    ),
    blue=Select(
        "u0", "u4",
        red=Contract(("u4", "u1", "u3"), 3, Residual("brb", ("u2", "u0", "u4", "u3"))),
        blue=Contract(("u2", "u0", "u4", "u1", "u3"), 5, Residual("b", ("u2", "u3"))),
    ),
)

T["2/brrb"] = Select(
    "u4", "u1",
    blue=Contract(("u1", "u4", "u3"), 3, Residual("brb", ("u2", "u0", "u1", "u3"))),
    red=Select(
        "u3", "u5",
        red=Force(
            _f("u4u5", "u5u0"),
            Contract(("u2", "u0", "u5", "u4", "u3"), 7, Residual("br", ("u2", "u3", "u1"))),
        ),
        blue=Contract(("u4", "u3", "u5"), 3, Residual("brrb", ("u2", "u0", "u1", "u4", "u5"))),
    ),
)

T["2/brr"] = Select(
    "u3", "u4",
    blue=Goto("2/brrb"),
    red=Force(_f("u4u0"), Contract(("u2", "u0", "u4"), 3, Residual("brr", ("u2", "u4", "u3", "u1")))),
)

T["2"] = Select("u1", "u3", blue=Goto("2/brb"), red=Goto("2/brr"))

T["1"] = Select(
    "u1", "u2",
    red=Goto("2", {"u0": "u1", "u2": "u0", "u1": "u2"}),
    blue=Contract(("u0", "u1", "u2"), 2, Residual("b", ("u0", "u2"))),
)

# where a start path enters the plans: (plan, names of the path's vertices)
START_ENTRY: dict[str, tuple[str, tuple[str, ...]]] = {
    "b": ("1", ("u0", "u1")),
    "br": ("2", ("u2", "u0", "u1")),
    "brb": ("2/brb", ("u2", "u0", "u1", "u3")),
    "brr": ("2/brr", ("u2", "u0", "u1", "u3")),
    "brrb": ("2/brrb", ("u2", "u0", "u1", "u3", "u4")),
}


def walk_steps(step: Step):
    """Every step reachable from ``step`` inside its own plan (gotos not followed)."""
    yield step
    if isinstance(step, Select):
        yield from walk_steps(step.blue)
        yield from walk_steps(step.red)
    elif isinstance(step, (Force, Contract)):
        yield from walk_steps(step.then)


def filled_moves() -> list[tuple[str, Select]]:
    """Moves that the case tables leave implicit, flagged for review."""
    out = []
    for name, plan in T.items():
        for st in walk_steps(plan):
            if isinstance(st, Select) and st.filled:
                out.append((name, st))
    return out
