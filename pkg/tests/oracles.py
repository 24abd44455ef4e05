"""Independent reference computations and graph families for the tests.

Nothing here calls the library's algorithms beyond graph construction and
Laplacian assembly; each oracle recomputes its answer by brute force or with
sympy.
"""
from __future__ import annotations

import itertools
import random
from typing import Dict, List, Sequence, Tuple

import networkx as nx
import sympy
from networkx.generators.atlas import graph_atlas_g

from sandpile_ag.graph import Graph, reduced_laplacian


# graph families -------------------------------------------------------------

def from_networkx(h: nx.Graph, weights: Dict[Tuple[int, int], int] | None = None) -> Graph:
    """Undirected graph with the highest-numbered node as sink."""
    nodes = sorted(h.nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    w: Dict[Tuple[int, int], int] = {}
    for a, b in h.edges:
        k = (weights or {}).get((min(a, b), max(a, b)), 1)
        w[(idx[a], idx[b])] = k
        w[(idx[b], idx[a])] = k
    return Graph([f"v{v}" for v in nodes], w)


def connected_atlas(max_nodes: int, min_nodes: int = 1) -> List[Graph]:
    """Every connected simple graph with ``min_nodes..max_nodes`` vertices, up to isomorphism."""
    out = []
    for h in graph_atlas_g():
        k = h.number_of_nodes()
        if min_nodes <= k <= max_nodes and k > 0 and nx.is_connected(h):
            out.append(from_networkx(h))
    return out


def random_digraph(rng: random.Random, nv: int, max_weight: int = 3,
                   density: float = 0.5, absolute_sink: bool = False) -> Graph:
    """Random weighted digraph on ``nv`` vertices with a globally accessible sink."""
    while True:
        w = {}
        for u in range(nv):
            for v in range(nv):
                if u == v or (absolute_sink and u == nv - 1):
                    continue
                if rng.random() < density:
                    w[(u, v)] = rng.randint(1, max_weight)
        try:
            return Graph([f"u{i}" for i in range(nv)], w)
        except ValueError:
            continue


def random_undirected(rng: random.Random, nv: int, max_weight: int = 3,
                      density: float = 0.6, loops: bool = False) -> Graph:
    while True:
        w = {}
        for u in range(nv):
            if loops and rng.random() < 0.3:
                w[(u, u)] = rng.randint(1, max_weight)
            for v in range(u + 1, nv):
                if rng.random() < density:
                    k = rng.randint(1, max_weight)
                    w[(u, v)] = w[(v, u)] = k
        try:
            return Graph([f"u{i}" for i in range(nv)], w)
        except ValueError:
            continue


def random_eulerian(rng: random.Random, nv: int) -> Graph:
    """A cycle through every vertex plus a few random shorter cycles; in-degree equals out-degree."""
    w: Dict[Tuple[int, int], int] = {}

    def add_cycle(cyc):
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            w[(a, b)] = w.get((a, b), 0) + 1

    order = list(range(nv))
    rng.shuffle(order)
    if nv > 1:
        add_cycle(order)
        for _ in range(rng.randint(0, 2)):
            add_cycle(rng.sample(range(nv), rng.randint(2, nv)))
    return Graph([f"u{i}" for i in range(nv)], w)


# linear algebra ---------------------------------------------------------------

def sympy_matrix(m) -> sympy.Matrix:
    return sympy.Matrix([list(r) for r in m]) if len(m) else sympy.zeros(0, 0)


def sympy_invariant_factors(m) -> List[int]:
    """Diagonal of the Smith form computed by sympy, made nonnegative and sorted by divisibility."""
    from sympy.matrices.normalforms import smith_normal_form

    sm = smith_normal_form(sympy_matrix(m), domain=sympy.ZZ)
    diag = [abs(int(sm[i, i])) for i in range(min(sm.shape))]
    nonzero = sorted(x for x in diag if x)
    return nonzero + [0] * (len(diag) - len(nonzero))


def sympy_det(m) -> int:
    return int(sympy_matrix(m).det()) if len(m) else 1


def in_column_span_full_rank(m, v: Sequence[int]) -> bool:
    """Integer membership for a square nonsingular matrix: the rational solution is integral."""
    sol = sympy_matrix(m).LUsolve(sympy.Matrix(list(v)))
    return all(x.is_integer for x in sol)


def in_full_lattice(g: Graph, v: Sequence[int]) -> bool:
    """Membership in the full Laplacian lattice when the sink column is spanned by the others.

    Every nonsink column of the full Laplacian is a reduced column stacked on
    minus its sum, so the lattice is ``{(w, -sum w)}`` with ``w`` in the
    reduced lattice.
    """
    if sum(v) != 0:
        return False
    if g.n == 0:
        return True
    return in_column_span_full_rank(reduced_laplacian(g), v[: g.n])


# sandpile oracles ---------------------------------------------------------------

def in_tree_weight(g: Graph) -> int:
    """Total weight of spanning trees directed into the sink, by exhaustive enumeration."""
    n = g.n
    choices = []
    for v in range(n):
        opts = [(u, k) for (a, u), k in g.weights.items() if a == v and u != v]
        if not opts:
            return 0
        choices.append(opts)
    total = 0
    for pick in itertools.product(*choices):
        ok = True
        for start in range(n):
            seen, x = set(), start
            while x != n:
                if x in seen:
                    ok = False
                    break
                seen.add(x)
                x = pick[x][0]
            if not ok:
                break
        if ok:
            w = 1
            for _, k in pick:
                w *= k
            total += w
    return total


def stabilize_naive(g: Graph, c: Sequence[int], order: Sequence[int] | None = None
                    ) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Fire one unstable vertex at a time, always the first unstable one in ``order``."""
    lap = reduced_laplacian(g)
    outdeg = g.outdeg
    c = list(c)
    script = [0] * g.n
    order = list(order) if order is not None else list(range(g.n))
    while True:
        v = next((v for v in order if c[v] >= outdeg[v]), None)
        if v is None:
            return tuple(c), tuple(script)
        for i in range(g.n):
            c[i] -= lap[i][v]
        script[v] += 1


def legal_script_exists(g: Graph, c: Sequence[int], bound: Sequence[int]) -> bool:
    """Is there a nonzero script ``0 <= s <= bound`` with ``c - L s >= 0``?"""
    lap = reduced_laplacian(g)
    for s in itertools.product(*(range(b + 1) for b in bound)):
        if not any(s):
            continue
        if all(c[i] - sum(lap[i][j] * s[j] for j in range(g.n)) >= 0 for i in range(g.n)):
            return True
    return False


def burning_script_oracle(g: Graph) -> Tuple[int, ...]:
    """Least script ``>= 1`` whose firing is nonnegative, searching growing boxes.

    Such scripts are closed under componentwise minimum, so the least one sits
    below every script found.
    """
    lap = reduced_laplacian(g)
    for b in itertools.count(1):
        found = [s for s in itertools.product(range(1, b + 1), repeat=g.n)
                 if all(sum(lap[i][j] * s[j] for j in range(g.n)) >= 0 for i in range(g.n))]
        if found:
            return tuple(min(s[i] for s in found) for i in range(g.n))


def superstables_oracle(g: Graph, bound: Sequence[int]) -> List[Tuple[int, ...]]:
    """Stable configurations with no legal nonzero script inside ``bound``."""
    outdeg = g.outdeg[: g.n]
    return sorted(c for c in itertools.product(*(range(d) for d in outdeg))
                  if not legal_script_exists(g, c, bound))


def recurrents_oracle(g: Graph) -> List[Tuple[int, ...]]:
    """Stabilizations of ``c_max + a`` over all stable ``a``."""
    outdeg = g.outdeg[: g.n]
    cmax = [d - 1 for d in outdeg]
    out = set()
    for a in itertools.product(*(range(d) for d in outdeg)):
        out.add(stabilize_naive(g, [x + y for x, y in zip(cmax, a)])[0])
    return sorted(out)
