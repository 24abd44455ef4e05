"""Named example graphs, loaded from the bundled ``data`` directory, plus small families."""
from __future__ import annotations

import itertools
from importlib import resources
from typing import List

from .graph import Graph, parse_graph
from .intlinalg import IntMatrix, parse_matrix


def data_path(name: str):
    return resources.files(__package__).joinpath("data", name)


def load(name: str) -> Graph:
    """Parse a bundled graph file, e.g. ``load("diamond")``."""
    fname = name if name.endswith(".sg") else name + ".sg"
    return parse_graph(data_path(fname).read_text(encoding="utf-8"))


def load_matrix(name: str) -> IntMatrix:
    fname = name if name.endswith(".mat") else name + ".mat"
    return parse_matrix(data_path(fname).read_text(encoding="utf-8"))


def directed21() -> Graph:
    """Directed graph whose sink has out-edges; sandpile group of order 21."""
    return load("directed21")


def mixed4() -> Graph:
    """Four vertices, mixed directed/undirected edges, burning script (1,2,1)."""
    return load("mixed4")


def gorenstein5() -> Graph:
    """Directed Gorenstein graph with absolute sink and group order 5."""
    return load("gorenstein5")


def diamond() -> Graph:
    return load("diamond")


def triangle() -> Graph:
    return load("triangle")


def k4() -> Graph:
    return load("k4")


def two_cycle() -> Graph:
    return load("two_cycle")


def path_graph(k: int, weight: int = 1) -> Graph:
    """Undirected path on ``k`` vertices ``p0 .. p{k-1}``, sink at the end."""
    if k == 1:
        return Graph(["p0"], {})
    return Graph.from_edges([], f"p{k - 1}", [(f"p{i}", f"p{i + 1}", weight) for i in range(k - 1)])


def complete_graph(k: int) -> Graph:
    names = [f"k{i}" for i in range(k)]
    return Graph.from_edges([], names[-1], [(a, b, 1) for a, b in itertools.combinations(names, 2)],
                            vertices=names)


def cycle_graph(k: int) -> Graph:
    names = [f"c{i}" for i in range(k)]
    return Graph.from_edges([], names[-1], [(names[i], names[(i + 1) % k], 1) for i in range(k)],
                            vertices=names)


def directed_path(k: int, weight: int = 1) -> Graph:
    """``d0 -> d1 -> ... -> d{k-1}``, sink at the end (absolute)."""
    if k == 1:
        return Graph(["d0"], {})
    return Graph.from_edges([(f"d{i}", f"d{i + 1}", weight) for i in range(k - 1)], f"d{k - 1}")


def star(k: int) -> Graph:
    """Undirected star with ``k`` leaves around the sink."""
    return Graph.from_edges([], "hub", [(f"l{i}", "hub", 1) for i in range(k)])


def named() -> List[str]:
    return ["directed21", "mixed4", "gorenstein5", "diamond", "triangle", "k4", "two_cycle"]
