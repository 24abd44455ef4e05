"""Tutte polynomial by memoized deletion-contraction, and the Merino identity."""
from __future__ import annotations

from typing import Dict, Iterable, List, Tuple

from .errors import PreconditionError
from .graph import Graph, is_undirected, undirected_edges

Edge = Tuple[int, int]
Multigraph = Dict[Edge, int]


class Polynomial2(dict):
    """Sparse bivariate integer polynomial ``{(i, j): coeff}`` for ``x^i y^j``."""

    @classmethod
    def monomial(cls, i: int = 0, j: int = 0, c: int = 1) -> "Polynomial2":
        return cls({(i, j): c}) if c else cls()

    def __add__(self, other: "Polynomial2") -> "Polynomial2":
        out = Polynomial2(self)
        for k, c in other.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out

    def __mul__(self, other: "Polynomial2") -> "Polynomial2":
        out: Dict[Tuple[int, int], int] = {}
        for (a, b), c in self.items():
            for (d, e), f in other.items():
                k = (a + d, b + e)
                out[k] = out.get(k, 0) + c * f
        return Polynomial2({k: v for k, v in out.items() if v})

    def shift(self, di: int, dj: int) -> "Polynomial2":
        return Polynomial2({(i + di, j + dj): c for (i, j), c in self.items()})

    def __call__(self, x, y):
        return sum(c * x ** i * y ** j for (i, j), c in self.items())

    def at_x1(self) -> List[int]:
        """Coefficients of ``T(1, y)`` in increasing powers of ``y``."""
        top = max((j for _, j in self), default=0)
        out = [0] * (top + 1)
        for (_, j), c in self.items():
            out[j] += c
        return out

    def terms(self) -> List[Tuple[int, int, int]]:
        return sorted((i, j, c) for (i, j), c in self.items())

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for (i, j), c in sorted(self.items(), key=lambda t: (t[0][1], t[0][0])):
            mono = "*".join(s for s in (
                "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                "" if j == 0 else ("y" if j == 1 else f"y^{j}")) if s)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def _canonical(edges: Multigraph) -> Tuple:
    """Relabel vertices by iterated colour refinement; return a sorted edge tuple.

    Equal keys mean the two multigraphs are isomorphic (both are isomorphic to
    the key itself), which is all the memo table needs.
    """
    verts = sorted({v for e in edges for v in e})
    nbrs: Dict[int, List[Tuple[int, int]]] = {v: [] for v in verts}
    for (a, b), m in edges.items():
        nbrs[a].append((b, m))
        nbrs[b].append((a, m))
    colour = {v: 0 for v in verts}
    for _ in range(len(verts)):
        sig = {v: (colour[v], tuple(sorted((colour[u], m) for u, m in nbrs[v]))) for v in verts}
        palette = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: palette[sig[v]] for v in verts}
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    order = sorted(verts, key=lambda v: (colour[v], v))
    relabel = {v: i for i, v in enumerate(order)}
    return tuple(sorted((min(relabel[a], relabel[b]), max(relabel[a], relabel[b]), m)
                        for (a, b), m in edges.items()))


def _connected(edges: Iterable[Edge], a: int, b: int) -> bool:
    adj: Dict[int, List[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen, todo = {a}, [a]
    while todo:
        x = todo.pop()
        if x == b:
            return True
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return False


def _contract(edges: Multigraph, a: int, b: int) -> Tuple[Multigraph, int]:
    """Merge ``b`` into ``a``; returns the new multigraph and the number of new loops."""
    out: Multigraph = {}
    loops = 0
    for (u, v), m in edges.items():
        u2 = a if u == b else u
        v2 = a if v == b else v
        if u2 == v2:
            loops += m
            continue
        k = (min(u2, v2), max(u2, v2))
        out[k] = out.get(k, 0) + m
    return out, loops


def _tutte(edges: Multigraph, memo: Dict) -> Polynomial2:
    if not edges:
        return Polynomial2.monomial()
    key = _canonical(edges)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if all(m == 1 for m in edges.values()) and all(
            not _connected([f for f in edges if f != e], *e) for e in edges):
        result = Polynomial2.monomial(len(edges), 0)
    else:
        # branch on an edge at a vertex of smallest degree
        deg: Dict[int, int] = {}
        for (u, v), m in edges.items():
            deg[u] = deg.get(u, 0) + m
            deg[v] = deg.get(v, 0) + m
        e = min(edges, key=lambda f: (min(deg[f[0]], deg[f[1]]), f))
        m = edges[e]
        contracted, loops = _contract(edges, *e)
        # the other m - 1 parallel copies become loops
        tc = _tutte(contracted, memo).shift(0, loops - 1)
        if m == 1 and not _connected([f for f in edges if f != e], *e):
            result = tc.shift(1, 0)
        else:
            deleted = dict(edges)
            if m == 1:
                del deleted[e]
            else:
                deleted[e] = m - 1
            result = _tutte(deleted, memo) + tc
    memo[key] = result
    return result


def tutte_multigraph(edges: Multigraph, loops: int = 0) -> Polynomial2:
    """Tutte polynomial of a loopless multigraph given as ``{(a, b): multiplicity}``, times ``y^loops``."""
    clean: Multigraph = {}
    for (a, b), m in edges.items():
        if m <= 0:
            continue
        if a == b:
            loops += m
            continue
        k = (min(a, b), max(a, b))
        clean[k] = clean.get(k, 0) + m
    return _tutte(clean, {}).shift(0, loops)


def tutte(g: Graph) -> Polynomial2:
    """Tutte polynomial of an undirected graph; weights count as parallel edges."""
    if not is_undirected(g):
        raise PreconditionError("tutte requires an undirected graph")
    return tutte_multigraph(undirected_edges(g))


def merino_check(g: Graph) -> bool:
    """Check that T(1, y) is the reversed h-polynomial and T(1, 1) is the group order.

    Loops are ignored: they leave the Laplacian unchanged but multiply T by y.
    """
    from .group import group_order
    from .ideal import h_vector

    if not is_undirected(g):
        raise PreconditionError("merino_check requires an undirected graph")
    loopless = {e: m for e, m in undirected_edges(g).items() if e[0] != e[1]}
    t = tutte_multigraph(loopless)
    h, _ = h_vector(g)
    return t.at_x1() == list(reversed(h)) and t(1, 1) == group_order(g)
