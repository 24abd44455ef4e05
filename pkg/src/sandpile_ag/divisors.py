"""Divisors on sandpile graphs: equivalence, linear systems, rank, Riemann-Roch.

A divisor is an integer vector over all vertices in graph order (sink
last).  Classes modulo the full Laplacian lattice are identified two ways:
Hermite-normal-form membership (the reference test) and a Smith-form class
key, which makes bucketing many divisors cheap.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from .dynamics import Config, is_recurrent
from .errors import CapExceeded, PreconditionError
from .graph import Graph, degree, genus, is_undirected, laplacian, num_edges, undirected_edges
from .group import DEFAULT_MAX_ORDER, enumerate_recurrents, enumerate_superstables
from .intlinalg import IntMatrix, hermite_normal_form, lattice_contains, smith_normal_form

Divisor = Tuple[int, ...]
ClassKey = Tuple[int, ...]
DEFAULT_MAX_DEGREE = 40


def deg(d: Sequence[int]) -> int:
    return sum(d)


def _check_divisor(g: Graph, d: Sequence[int]) -> None:
    if len(d) != g.n + 1:
        raise PreconditionError(f"divisor has length {len(d)}, expected {g.n + 1}")


@lru_cache(maxsize=256)
def _full_hnf(g: Graph):
    return hermite_normal_form(laplacian(g).columns())


@lru_cache(maxsize=256)
def _full_smith(g: Graph) -> Tuple[IntMatrix, Tuple[int, ...]]:
    u, dmat, _ = smith_normal_form(laplacian(g))
    return u, tuple(dmat[i][i] for i in range(g.n + 1))


def is_equivalent(g: Graph, d1: Sequence[int], d2: Sequence[int]) -> bool:
    """``d1 - d2`` is in the image of the full Laplacian."""
    _check_divisor(g, d1)
    _check_divisor(g, d2)
    return lattice_contains(_full_hnf(g), [a - b for a, b in zip(d1, d2)])


def class_key(g: Graph, d: Sequence[int]) -> ClassKey:
    """Complete invariant of the linear-equivalence class of ``d``.

    Coordinates of ``U d`` in the Smith basis, each reduced modulo its
    invariant factor (kept exactly where the factor is zero).
    """
    u, facs = _full_smith(g)
    img = u @ tuple(d)
    return tuple(x % f if f else x for x, f in zip(img, facs) if f != 1)


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Nonnegative integer vectors of length ``parts`` summing to ``total``, lex descending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _check_degree(k: int, cap: int) -> None:
    if k > cap:
        raise CapExceeded(f"divisor degree {k} exceeds cap {cap}")


@lru_cache(maxsize=512)
def effective_classes(g: Graph, k: int) -> Dict[ClassKey, Tuple[Divisor, ...]]:
    """All effective divisors of degree ``k``, bucketed by class key."""
    out: Dict[ClassKey, List[Divisor]] = {}
    for e in compositions(k, g.n + 1):
        out.setdefault(class_key(g, e), []).append(e)
    return {key: tuple(v) for key, v in out.items()}


def linear_system(g: Graph, d: Sequence[int], max_degree: int = DEFAULT_MAX_DEGREE) -> List[Divisor]:
    """Effective divisors linearly equivalent to ``d`` (lex descending)."""
    _check_divisor(g, d)
    k = deg(d)
    if k < 0:
        return []
    _check_degree(k, max_degree)
    return list(effective_classes(g, k).get(class_key(g, d), ()))


def linear_system_bruteforce(g: Graph, d: Sequence[int]) -> List[Divisor]:
    """Reference version: filter every composition with the Hermite membership test."""
    k = deg(d)
    if k < 0:
        return []
    return [e for e in compositions(k, g.n + 1) if is_equivalent(g, e, d)]


def _require_rr_graph(g: Graph, what: str) -> None:
    if not is_undirected(g):
        raise PreconditionError(f"{what} requires an undirected graph")
    if g.has_loops():
        raise PreconditionError(f"{what} requires a loopless graph")


def rank_r(g: Graph, d: Sequence[int], max_degree: int | None = None) -> int:
    """Largest k such that ``d - e`` has an effective representative for every effective e of degree k."""
    _require_rr_graph(g, "rank_r")
    _check_divisor(g, d)
    if max_degree is None:
        max_degree = 2 * genus(g) + 2
    k = deg(d)
    _check_degree(k, max(max_degree, 0))
    if k < 0:
        return -1
    u, facs = _full_smith(g)
    keep = [j for j, f in enumerate(facs) if f != 1]

    def key_of(vec):
        return tuple((vec[j] % facs[j]) if facs[j] else vec[j] for j in keep)

    img_d = u @ tuple(d)
    alive = {j: set(effective_classes(g, j)) for j in range(k + 1)}
    if key_of(img_d) not in alive[k]:
        return -1
    r = 0
    while r < k:
        nxt = r + 1
        ok = True
        for e in compositions(nxt, g.n + 1):
            img_e = u @ e
            if key_of([a - b for a, b in zip(img_d, img_e)]) not in alive[k - nxt]:
                ok = False
                break
        if not ok:
            break
        r = nxt
    return r


def canonical(g: Graph) -> Divisor:
    """``deg(v) - 2`` at every vertex."""
    _require_rr_graph(g, "canonical")
    return tuple(degree(g, v) - 2 for v in range(g.n + 1))


def riemann_roch_residual(g: Graph, d: Sequence[int], max_degree: int | None = None) -> int:
    """``r(D) - r(K - D) - (deg D + 1 - g)``; zero whenever Riemann-Roch holds."""
    k = canonical(g)
    other = tuple(a - b for a, b in zip(k, d))
    gg = genus(g)
    return rank_r(g, d, max_degree) - rank_r(g, other, max_degree) - (deg(d) + 1 - gg)


def maximal_superstables(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> List[Config]:
    """Superstables that stop being superstable when any single grain is added."""
    sup = set(enumerate_superstables(g, max_order))
    out = []
    for c in sup:
        if all(tuple(x + (i == v) for i, x in enumerate(c)) not in sup for v in range(g.n)):
            out.append(c)
    return sorted(out)


def nonspecial_divisors(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> List[Divisor]:
    """``c - s`` for each maximal superstable ``c``; each has an empty linear system."""
    _require_rr_graph(g, "nonspecial_divisors")
    out = [tuple(c) + (-1,) for c in maximal_superstables(g, max_order)]
    for d in out:
        if linear_system(g, d, max_degree=max(deg(d), 0)):
            raise AssertionError(f"divisor {d} has a nonempty linear system")
    return out


def minimal_recurrents(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> List[Config]:
    """Recurrents that stop being recurrent when any single grain is removed."""
    out = []
    for c in enumerate_recurrents(g, max_order):
        minimal = True
        for v in range(g.n):
            if c[v] == 0:
                continue
            lower = c[:v] + (c[v] - 1,) + c[v + 1:]
            if is_recurrent(g, lower):
                minimal = False
                break
        if minimal:
            out.append(c)
    return sorted(out)


def acyclic_orientations_unique_source(g: Graph, cap: int = 1 << 20
                                       ) -> List[Tuple[Tuple[Tuple[int, int], ...], Config]]:
    """Acyclic orientations whose only source is the sink, with their configurations.

    Parallel edges must all point the same way, so each underlying simple
    edge is oriented once.  The configuration puts ``indeg(v) - 1`` at each
    nonsink vertex, counting multiplicities.
    """
    _require_rr_graph(g, "acyclic_orientations_unique_source")
    simple = sorted(undirected_edges(g).items())
    if (1 << len(simple)) > cap:
        raise CapExceeded(f"{1 << len(simple)} orientations exceed cap {cap}")
    out = []
    for bits in itertools.product((0, 1), repeat=len(simple)):
        arcs = tuple((u, v) if b == 0 else (v, u) for ((u, v), _), b in zip(simple, bits))
        indeg = [0] * (g.n + 1)
        for ((u, v), m), (a, b) in zip(simple, arcs):
            indeg[b] += m
        sources = [v for v in range(g.n + 1) if indeg[v] == 0]
        if sources != [g.n] or not _acyclic(g.n + 1, arcs):
            continue
        out.append((arcs, tuple(indeg[v] - 1 for v in range(g.n))))
    return out


def _acyclic(nv: int, arcs: Sequence[Tuple[int, int]]) -> bool:
    indeg = [0] * nv
    adj: List[List[int]] = [[] for _ in range(nv)]
    for a, b in arcs:
        adj[a].append(b)
        indeg[b] += 1
    todo = [v for v in range(nv) if indeg[v] == 0]
    seen = 0
    while todo:
        x = todo.pop()
        seen += 1
        for y in adj[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                todo.append(y)
    return seen == nv


def torsion_order(g: Graph) -> int:
    """Number of divisor classes of any fixed degree."""
    _, facs = _full_smith(g)
    out = 1
    for f in facs:
        if f:
            out *= f
    return out


def homogeneous_hilbert(g: Graph, k: int, max_degree: int = DEFAULT_MAX_DEGREE) -> int:
    """Number of degree-``k`` classes that contain an effective divisor."""
    if k < 0:
        return 0
    _check_degree(k, max_degree)
    return len(effective_classes(g, k))


def homogeneous_h_vector(g: Graph, max_degree: int = DEFAULT_MAX_DEGREE) -> List[int]:
    """First differences of the homogeneous Hilbert function, up to where it stabilizes."""
    total = torsion_order(g)
    values = []
    k = 0
    while True:
        values.append(homogeneous_hilbert(g, k, max_degree))
        if values[-1] == total:
            break
        k += 1
    return [values[0]] + [b - a for a, b in zip(values, values[1:])]


def render(d: Sequence[int]) -> str:
    """Compact digit string when every entry is a single digit, else comma separated."""
    if all(0 <= x <= 9 for x in d):
        return "".join(str(x) for x in d)
    return ",".join(str(x) for x in d)


def divisor_degree_sink(g: Graph) -> int:
    """Weighted degree of the sink."""
    return degree(g, g.n)


def minimal_recurrent_degree(g: Graph) -> int:
    """``#E - deg(s)``: the common degree of minimal recurrents on undirected graphs."""
    return num_edges(g) - divisor_degree_sink(g)

