"""Sandpile graphs: storage, parsing, Laplacians and structural predicates."""
from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import GraphFormatError, PreconditionError
from .intlinalg import IntMatrix, determinant


class Graph:
    """Weighted directed multigraph with a designated sink.

    ``names`` lists the vertex ids with the sink last; index ``n`` (the number
    of nonsink vertices) is always the sink.  ``weights`` maps index pairs
    ``(u, v)`` to positive multiplicities.  Instances are immutable and
    hashable.
    """

    def __init__(self, names: Sequence[str], weights: Mapping[Tuple[int, int], int],
                 check: bool = True):
        self.names: Tuple[str, ...] = tuple(str(x) for x in names)
        self.n = len(self.names) - 1
        if self.n < 0:
            raise GraphFormatError("graph has no vertices")
        if len(set(self.names)) != len(self.names):
            raise GraphFormatError("duplicate vertex name")
        w: Dict[Tuple[int, int], int] = {}
        for (u, v), k in weights.items():
            k = int(k)
            if k <= 0:
                raise GraphFormatError(f"nonpositive weight on edge {u}->{v}")
            if not (0 <= u <= self.n and 0 <= v <= self.n):
                raise GraphFormatError("edge endpoint out of range")
            w[(u, v)] = k
        self.weights: Dict[Tuple[int, int], int] = dict(sorted(w.items()))
        self._hash = hash((self.names, tuple(self.weights.items())))
        if check and not self.sink_accessible():
            raise GraphFormatError("sink is not globally accessible")

    # construction helpers -------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[str, str, int]], sink: str,
                   uedges: Iterable[Tuple[str, str, int]] = (),
                   vertices: Iterable[str] = ()) -> "Graph":
        """Build from directed and undirected edge lists (names as strings)."""
        order: List[str] = []
        seen = set()

        def touch(x):
            x = str(x)
            if x not in seen:
                seen.add(x)
                order.append(x)
            return x

        acc: Dict[Tuple[str, str], int] = {}
        for v in vertices:
            touch(v)
        for u, v, k in edges:
            u, v = touch(u), touch(v)
            acc[(u, v)] = acc.get((u, v), 0) + k
        for u, v, k in uedges:
            u, v = touch(u), touch(v)
            acc[(u, v)] = acc.get((u, v), 0) + k
            if u != v:
                acc[(v, u)] = acc.get((v, u), 0) + k
        touch(sink)
        names = [x for x in order if x != str(sink)] + [str(sink)]
        idx = {x: i for i, x in enumerate(names)}
        return cls(names, {(idx[u], idx[v]): k for (u, v), k in acc.items()})

    def with_sink(self, sink) -> "Graph":
        """Same graph, with another vertex (index or name) as sink."""
        s = self.index(sink) if not isinstance(sink, int) else sink
        perm = [i for i in range(self.n + 1) if i != s] + [s]
        pos = {old: new for new, old in enumerate(perm)}
        return Graph([self.names[i] for i in perm],
                     {(pos[u], pos[v]): k for (u, v), k in self.weights.items()})

    def index(self, name: str) -> int:
        try:
            return self.names.index(str(name))
        except ValueError:
            raise PreconditionError(f"unknown vertex {name!r}") from None

    # basic data ---------------------------------------------------------

    @property
    def sink(self) -> int:
        return self.n

    @property
    def sink_name(self) -> str:
        return self.names[self.n]

    @property
    def num_vertices(self) -> int:
        return self.n + 1

    def wt(self, u: int, v: int) -> int:
        return self.weights.get((u, v), 0)

    @cached_property
    def outdeg(self) -> Tuple[int, ...]:
        out = [0] * (self.n + 1)
        for (u, _), k in self.weights.items():
            out[u] += k
        return tuple(out)

    @cached_property
    def indeg(self) -> Tuple[int, ...]:
        d = [0] * (self.n + 1)
        for (_, v), k in self.weights.items():
            d[v] += k
        return tuple(d)

    @cached_property
    def out_neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        nb: List[List[int]] = [[] for _ in range(self.n + 1)]
        for (u, v) in self.weights:
            nb[u].append(v)
        return tuple(tuple(x) for x in nb)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.names == other.names
                and self.weights == other.weights)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph({self.names!r}, sink={self.sink_name!r}, edges={len(self.weights)})"

    def __getstate__(self):
        return (self.names, self.weights)

    def __setstate__(self, state):
        names, weights = state
        self.__init__(names, weights, check=False)

    def sink_accessible(self) -> bool:
        """Every vertex has a directed path to the sink."""
        rev: List[List[int]] = [[] for _ in range(self.n + 1)]
        for (u, v) in self.weights:
            rev[v].append(u)
        seen = {self.n}
        todo = [self.n]
        while todo:
            x = todo.pop()
            for y in rev[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == self.n + 1

    def has_absolute_sink(self) -> bool:
        return all(u != self.n for (u, _) in self.weights)

    def has_loops(self) -> bool:
        return any(u == v for (u, v) in self.weights)

    def to_text(self) -> str:
        """Serialize in the line-oriented graph file format."""
        lines = [f"sink {self.sink_name}"]
        used = {u for e in self.weights for u in e}
        lines += [f"vertex {self.names[i]}" for i in range(self.n + 1) if i not in used]
        lines += [f"edge {self.names[u]} {self.names[v]} {k}"
                  for (u, v), k in self.weights.items()]
        return "\n".join(lines) + "\n"

    @cached_property
    def distances_to_sink(self) -> Tuple[int, ...]:
        """Unweighted shortest directed path length from each vertex to the sink."""
        rev: List[List[int]] = [[] for _ in range(self.n + 1)]
        for (u, v) in self.weights:
            rev[v].append(u)
        dist = [-1] * (self.n + 1)
        dist[self.n] = 0
        q = deque([self.n])
        while q:
            x = q.popleft()
            for y in rev[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    q.append(y)
        return tuple(dist)


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    Directives: ``sink ID``, ``vertex ID``, ``edge U V W``, ``uedge U V W``;
    ``#`` starts a comment.  Repeated edges accumulate weight.
    """
    sink = None
    vertices: List[str] = []
    edges: List[Tuple[str, str, int]] = []
    uedges: List[Tuple[str, str, int]] = []
    order: List[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "sink" and len(tok) == 2:
            if sink is not None:
                raise GraphFormatError(f"line {lineno}: duplicate sink directive")
            sink = tok[1]
            order.append(tok[1])
        elif kind == "vertex" and len(tok) == 2:
            vertices.append(tok[1])
            order.append(tok[1])
        elif kind in ("edge", "uedge") and len(tok) == 4:
            try:
                w = int(tok[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: weight must be an integer") from None
            if w <= 0:
                raise GraphFormatError(f"line {lineno}: nonpositive weight {w}")
            (edges if kind == "edge" else uedges).append((tok[1], tok[2], w))
            order += [tok[1], tok[2]]
        else:
            raise GraphFormatError(f"line {lineno}: malformed line {raw.strip()!r}")
    if sink is None:
        raise GraphFormatError("missing sink directive")
    # keep first-appearance order across all directive kinds
    first: List[str] = []
    for x in order:
        if x not in first:
            first.append(x)
    return Graph.from_edges(edges, sink, uedges, vertices=first)


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def laplacian(g: Graph) -> IntMatrix:
    """Full Laplacian; column j is the divisor lost by firing vertex j."""
    m = g.n + 1
    a = [[0] * m for _ in range(m)]
    for j in range(m):
        a[j][j] = g.outdeg[j] - g.wt(j, j)
    for (u, v), k in g.weights.items():
        if u != v:
            a[v][u] -= k
    return IntMatrix(a, cols=m)


def reduced_laplacian(g: Graph) -> IntMatrix:
    """Laplacian with the sink row and column removed."""
    full = laplacian(g)
    return IntMatrix((r[: g.n] for r in full[: g.n]), cols=g.n)


def spanning_tree_weight(g: Graph) -> int:
    """Weighted count of spanning trees directed into the sink."""
    return determinant(reduced_laplacian(g))


def is_eulerian(g: Graph) -> bool:
    return g.indeg == g.outdeg and g.sink_accessible()


def is_undirected(g: Graph) -> bool:
    return all(g.wt(v, u) == k for (u, v), k in g.weights.items())


def _require_undirected(g: Graph, what: str) -> None:
    if not is_undirected(g):
        raise PreconditionError(f"{what} requires an undirected graph")


def undirected_edges(g: Graph) -> Dict[Tuple[int, int], int]:
    """Each undirected edge ``{u, v}`` once, keyed by ``(min, max)``."""
    _require_undirected(g, "undirected_edges")
    return {(u, v): k for (u, v), k in g.weights.items() if u <= v}


def num_edges(g: Graph) -> int:
    """Total undirected edge multiplicity, loops included."""
    return sum(undirected_edges(g).values())


def degree(g: Graph, v: int) -> int:
    """Undirected degree counting weights; a loop adds its weight once."""
    return g.outdeg[v]


def genus(g: Graph) -> int:
    return num_edges(g) - g.num_vertices + 1


def is_loopy_tree(g: Graph) -> bool:
    """Underlying simple loopless graph is a tree."""
    _require_undirected(g, "is_loopy_tree")
    simple = {(u, v) for (u, v) in undirected_edges(g) if u != v}
    if len(simple) != g.n:
        return False
    return g.sink_accessible()
