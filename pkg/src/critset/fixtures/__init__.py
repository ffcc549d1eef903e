"""Bundled example graphs and the invariant values they are known to have.

Every expected value carries a provenance tag: ``"stated"`` for values taken
as given with the graph, ``"derived"`` for values computed independently
(brute force) from the edge lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any

from ..graph import Graph, parse_edge_list

FIXTURE_NAMES = (
    "fig1",
    "fig2_g1",
    "fig2_g2",
    "fig2_g3",
    "fig3_g",
    "fig3_h",
    "k32",
    "c4",
)


@dataclass(frozen=True)
class Expected:
    value: Any
    provenance: str  # "stated" | "derived"


@dataclass(frozen=True)
class GraphFixture:
    name: str
    graph: Graph
    expected: dict[str, Expected] = field(default_factory=dict)

    def value(self, key: str) -> Any:
        return self.expected[key].value


def _s(value: Any) -> Expected:
    return Expected(value, "stated")


def _d(value: Any) -> Expected:
    return Expected(value, "derived")


# Sets are given by vertex label; minimal families as lists of label sets.
_EXPECTED: dict[str, dict[str, Expected]] = {
    "fig1": {
        "d_c": _s(1),
        "ker": _s({"v1", "v2"}),
        "core": _s({"v1", "v2", "v6", "v10"}),
        "critical_sets": _s([
            {"v1", "v2", "v3", "v4"},
            {"v1", "v2"},
            {"v1", "v2", "v3"},
            {"v1", "v2", "v3", "v4", "v6", "v7"},
        ]),
        "critical_independent": _s({"v1", "v2", "v3", "v6", "v7"}),
        "deletion_delta": _s({"v1": -1, "v13": 0, "v3": 1}),
        "minimal_sets": _d([{"v1", "v2"}]),
    },
    "fig2_g1": {
        "d_c": _s(1),
        "ker": _s({"a", "b"}),
        "core": _s({"a", "b"}),
        "minimal_sets": _s([{"a", "b"}]),
    },
    "fig2_g2": {
        "ker": _s({"x", "y", "z"}),
        "core": _s({"q", "x", "y", "z"}),
        "minimal_sets": _s([{"x", "y"}, {"x", "z"}, {"y", "z"}]),
        "d_c": _d(2),
    },
    "fig2_g3": {
        "ker": _s({"u", "v"}),
        "core": _s({"t", "u", "v", "w"}),
        "max_critical_size": _s(3),
        "max_critical_example": _s({"t", "u", "v"}),
        "d_c": _d(1),
    },
    "fig3_g": {
        "d_c": _s(2),
        "ker": _s({"x", "y", "u", "v", "w"}),
        "minimal_sets": _s([{"x", "y"}, {"u", "v", "w"}]),
    },
    "fig3_h": {
        "d_c": _s(3),
        "ker": _d({"v1", "v2", "v3", "v4"}),
        "minimal_set_count": _s(6),
    },
    "k32": {
        "ker": _s({"a1", "a2", "a3"}),
        "core": _d({"a1", "a2", "a3"}),
        "d_c": _d(1),
    },
    "c4": {
        "d_c": _d(0),
        "ker": _s(set()),
    },
}


@lru_cache(maxsize=None)
def load_graph(name: str) -> Graph:
    """Parse the bundled ``<name>.edges`` file."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    text = resources.files(__name__).joinpath(f"{name}.edges").read_text()
    return parse_edge_list(text)


def load_fixture(name: str) -> GraphFixture:
    return GraphFixture(name, load_graph(name), dict(_EXPECTED.get(name, {})))


def all_fixtures() -> list[GraphFixture]:
    return [load_fixture(name) for name in FIXTURE_NAMES]
