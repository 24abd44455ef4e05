"""Graded Betti numbers of the homogeneous toppling ideal.

For a divisor class D, the Betti number in homological degree i and
multidegree D is the dimension of the (i - 1)-st reduced homology of the
complex of vertex sets that lie in the support of some effective divisor
equivalent to D.  Only classes containing an effective divisor can
contribute, so each degree is handled by bucketing effective divisors by
class.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .divisors import (DEFAULT_MAX_DEGREE, Divisor, effective_classes, homogeneous_h_vector,
                       linear_system, minimal_recurrents, render)
from .errors import CapExceeded, PreconditionError
from .graph import Graph, is_undirected, undirected_edges
from .group import DEFAULT_MAX_ORDER, class_vector, enumerate_recurrents
from .intlinalg import rank, rank_mod_p

CHECK_PRIME = 1_000_003


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of vertex subsets, stored by its facets."""

    ground: Tuple[int, ...]
    facets: Tuple[FrozenSet[int], ...]

    @classmethod
    def from_sets(cls, ground: Iterable[int], sets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        uniq = {frozenset(s) for s in sets}
        facets = [s for s in uniq if not any(s < t for t in uniq)]
        facets.sort(key=lambda s: (-len(s), sorted(s)))
        return cls(tuple(ground), tuple(facets))

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def faces(self, k: int) -> List[Tuple[int, ...]]:
        """Faces with ``k + 1`` vertices, sorted; ``k = -1`` gives the empty face."""
        out = set()
        for f in self.facets:
            if len(f) >= k + 1:
                out.update(itertools.combinations(sorted(f), k + 1))
        return sorted(out)


def _boundary(rows: Sequence[Tuple[int, ...]], cols: Sequence[Tuple[int, ...]]) -> List[List[int]]:
    index = {f: i for i, f in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, face in enumerate(cols):
        for pos in range(len(face)):
            sub = face[:pos] + face[pos + 1:]
            mat[index[sub]][j] = -1 if pos % 2 else 1
    return mat


def reduced_homology_ranks(c: SimplicialComplex, check: bool = True) -> List[int]:
    """Ranks of reduced homology in dimensions -1 .. dim(c), over the rationals.

    The void complex has no faces at all and every group vanishes; the
    complex whose only face is the empty set has rank 1 in dimension -1.
    """
    if c.is_void:
        return [0]
    top = c.dim
    faces = {k: c.faces(k) for k in range(-1, top + 1)}
    ranks = {}
    for k in range(0, top + 1):
        mat = _boundary(faces[k - 1], faces[k])
        r = rank(mat)
        if check and rank_mod_p(mat, CHECK_PRIME) != r:
            raise AssertionError("rational and modular boundary ranks disagree")
        ranks[k] = r
    out = []
    for k in range(-1, top + 1):
        out.append(len(faces[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0))
    return out


def delta_complex(g: Graph, d: Sequence[int], max_degree: int = DEFAULT_MAX_DEGREE) -> SimplicialComplex:
    """Complex generated by the supports of the effective divisors equivalent to ``d``."""
    system = linear_system(g, d, max_degree)
    return SimplicialComplex.from_sets(
        range(g.n + 1), ({i for i, x in enumerate(e) if x} for e in system))


@dataclass(frozen=True)
class BettiEntry:
    i: int
    degree: int
    divisor: Divisor
    multiplicity: int

    def to_json(self) -> dict:
        return {"i": self.i, "degree": self.degree, "degree_vector": list(self.divisor),
                "multiplicity": self.multiplicity}


@dataclass
class BettiTable:
    """Nonzero graded Betti numbers for homological degrees 1..n."""

    n: int
    entries: List[BettiEntry] = field(default_factory=list)
    scanned_degree: int = 0

    @property
    def coarse(self) -> List[int]:
        out = [0] * self.n
        for e in self.entries:
            out[e.i - 1] += e.multiplicity
        return out

    def at(self, i: int) -> List[BettiEntry]:
        return [e for e in self.entries if e.i == i]

    def degree_multiset(self, i: int) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for e in self.at(i):
            out[e.degree] = out.get(e.degree, 0) + e.multiplicity
        return dict(sorted(out.items()))

    def lookup(self, i: int, divisor: Sequence[int]) -> int:
        for e in self.at(i):
            if e.divisor == tuple(divisor):
                return e.multiplicity
        return 0

    def to_json(self) -> dict:
        return {"coarse": self.coarse,
                "graded": [e.to_json() for e in self.entries]}

    def format(self) -> str:
        lines = ["coarse: " + " ".join(str(b) for b in self.coarse)]
        for e in self.entries:
            lines.append(f"  beta_{e.i}  degree {e.degree}  {render(e.divisor)}  x{e.multiplicity}")
        return "\n".join(lines)


def _class_representative(g: Graph, e: Divisor, recurrent_of: Dict) -> Divisor:
    """Recurrent nonsink part, with the sink coefficient fixing the degree."""
    r = recurrent_of[class_vector(g, e[: g.n])]
    return tuple(r) + (sum(e) - sum(r),)


def _betti_in_degree(g: Graph, k: int, recurrent_of: Dict) -> Tuple[List[BettiEntry], int]:
    """Betti entries of total degree ``k``, plus the zeroth Betti number in that degree."""
    entries = []
    zeroth = 0
    for members in effective_classes(g, k).values():
        cx = SimplicialComplex.from_sets(
            range(g.n + 1), ({i for i, x in enumerate(e) if x} for e in members))
        hom = reduced_homology_ranks(cx)
        rep = None
        for pos, h in enumerate(hom):
            i = pos  # dimension pos - 1 feeds homological degree pos
            if not h:
                continue
            if i == 0:
                zeroth += h
                continue
            if i > g.n:
                raise AssertionError(f"homology beyond the resolution length at degree {k}")
            if rep is None:
                rep = _class_representative(g, members[0], recurrent_of)
            entries.append(BettiEntry(i, k, rep, h))
    return entries, zeroth


def _worker(args):
    g, k, recurrent_of = args
    return k, _betti_in_degree(g, k, recurrent_of)


def _euler_lhs(n: int, entries: Iterable[BettiEntry], zeroth: Dict[int, int]) -> List[int]:
    poly: Dict[int, int] = dict(zeroth)
    for e in entries:
        poly[e.degree] = poly.get(e.degree, 0) + (-1) ** e.i * e.multiplicity
    top = max(poly, default=0)
    return _trim([poly.get(d, 0) for d in range(top + 1)])


def _trim(p: List[int]) -> List[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def euler_rhs(h: Sequence[int], n: int) -> List[int]:
    """``h(t) (1 - t)^n`` as a coefficient list."""
    out = list(h)
    for _ in range(n):
        out = _poly_mul(out, [1, -1])
    return _trim(out)


def graded_betti(g: Graph, threads: int = 1, max_order: int = DEFAULT_MAX_ORDER,
                 max_degree: int = DEFAULT_MAX_DEGREE) -> BettiTable:
    """All nonzero graded Betti numbers, scanning total degrees up to ``n + postulation``.

    The scan widens one degree at a time until the Euler characteristic of
    the table matches the h-polynomial times ``(1 - t)^n``.
    """
    recurrent_of = {class_vector(g, r): r for r in enumerate_recurrents(g, max_order)}
    h = homogeneous_h_vector(g, max_degree)
    target = euler_rhs(h, g.n)
    bound = g.n + len(h) - 1
    if bound > max_degree:
        raise CapExceeded(f"Betti scan needs degree {bound}, cap is {max_degree}")
    results: Dict[int, Tuple[List[BettiEntry], int]] = {}

    def run(degrees: List[int]) -> None:
        if threads > 1 and len(degrees) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for k, res in pool.map(_worker, [(g, k, recurrent_of) for k in degrees]):
                    results[k] = res
        else:
            for k in degrees:
                results[k] = _betti_in_degree(g, k, recurrent_of)

    run(list(range(bound + 1)))
    while True:
        entries = [e for k in sorted(results) for e in results[k][0]]
        zeroth = {k: results[k][1] for k in results if results[k][1]}
        if _euler_lhs(g.n, entries, zeroth) == target:
            break
        bound += 1
        if bound > max_degree:
            raise CapExceeded(f"Betti scan reached degree cap {max_degree} without closing")
        run([bound])
    entries.sort(key=lambda e: (e.i, e.degree, tuple(-x for x in e.divisor)))
    return BettiTable(g.n, entries, bound)


def euler_check(g: Graph, table: BettiTable, max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    """Alternating Betti sum against the h-polynomial times ``(1 - t)^n``."""
    h = homogeneous_h_vector(g, max_degree)
    return _euler_lhs(g.n, table.entries, {0: 1}) == euler_rhs(h, g.n)


# connected partitions ------------------------------------------------------

def _set_partitions(items: List[int], k: int):
    """Set partitions of ``items`` into exactly ``k`` blocks (restricted growth order)."""
    n = len(items)
    if k > n or k < 1:
        return
    labels = [0] * n

    def rec(pos: int, used: int):
        if n - pos < k - used:
            return
        if pos == n:
            if used == k:
                blocks: List[List[int]] = [[] for _ in range(k)]
                for item, lab in zip(items, labels):
                    blocks[lab].append(item)
                yield tuple(tuple(b) for b in blocks)
            return
        for lab in range(min(used + 1, k)):
            labels[pos] = lab
            yield from rec(pos + 1, max(used, lab + 1))

    yield from rec(0, 0)


def _induced_connected(adj: Dict[int, set], block: Sequence[int]) -> bool:
    members = set(block)
    start = block[0]
    seen, todo = {start}, [start]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y in members and y not in seen:
                seen.add(y)
                todo.append(y)
    return seen == members


Partition = Tuple[Tuple[int, ...], ...]


def connected_partitions(g: Graph, k: int, max_vertices: int = 10) -> List[Partition]:
    """Partitions of the vertex set into ``k`` blocks, each inducing a connected subgraph."""
    if not is_undirected(g):
        raise PreconditionError("connected_partitions requires an undirected graph")
    if g.num_vertices > max_vertices:
        raise CapExceeded(f"{g.num_vertices} vertices exceed the partition cap {max_vertices}")
    adj: Dict[int, set] = {v: set() for v in range(g.n + 1)}
    for (u, v) in g.weights:
        if u != v:
            adj[u].add(v)
    return [p for p in _set_partitions(list(range(g.n + 1)), k)
            if all(_induced_connected(adj, b) for b in p)]


def partition_graph(g: Graph, p: Partition) -> Graph:
    """Quotient graph: one vertex per block, weights count crossing edges."""
    if not is_undirected(g):
        raise PreconditionError("partition_graph requires an undirected graph")
    flat = sorted(v for b in p for v in b)
    if flat != list(range(g.n + 1)):
        raise PreconditionError("not a partition of the vertex set")
    adj: Dict[int, set] = {v: set() for v in range(g.n + 1)}
    for (u, v) in g.weights:
        if u != v:
            adj[u].add(v)
    if not all(_induced_connected(adj, b) for b in p):
        raise PreconditionError("partition has a disconnected block")
    blocks = sorted((tuple(sorted(b)) for b in p), key=lambda b: (g.n in b, b[0]))
    where = {v: i for i, b in enumerate(blocks) for v in b}
    weights: Dict[Tuple[int, int], int] = {}
    for (u, v), m in undirected_edges(g).items():
        a, b = where[u], where[v]
        if a != b:
            weights[(a, b)] = weights.get((a, b), 0) + m
            weights[(b, a)] = weights.get((b, a), 0) + m
    names = ["+".join(g.names[v] for v in b) for b in blocks]
    return Graph(names, weights)


@dataclass(frozen=True)
class ConjectureRow:
    k: int
    beta: int
    contributions: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.contributions)

    @property
    def holds(self) -> bool:
        return self.beta == self.total

    def to_json(self) -> dict:
        return {"k": self.k, "beta": self.beta, "contributions": list(self.contributions),
                "sum": self.total, "holds": self.holds}


def conjecture_check(g: Graph, table: Optional[BettiTable] = None,
                     threads: int = 1) -> List[ConjectureRow]:
    """Compare each coarse Betti number with minimal-recurrent counts over connected partitions."""
    if not is_undirected(g):
        raise PreconditionError("conjecture_check requires an undirected graph")
    if table is None:
        table = graded_betti(g, threads=threads)
    coarse = table.coarse
    rows = []
    for k in range(1, g.n + 1):
        contrib = tuple(len(minimal_recurrents(partition_graph(g, p)))
                        for p in connected_partitions(g, k + 1))
        rows.append(ConjectureRow(k, coarse[k - 1], contrib))
    return rows
