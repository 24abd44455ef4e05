"""Lattices to Laplacians, mixed-dominating matrices, wiring, and CI/Gorenstein tests."""
from __future__ import annotations

import itertools
from typing import Dict, List, Mapping, Optional, Sequence, Union

from .divisors import homogeneous_h_vector, linear_system
from .errors import CapExceeded, PreconditionError
from .graph import Graph, is_loopy_tree, is_undirected, laplacian
from .intlinalg import IntMatrix, column_hnf, determinant
from .resolution import BettiTable, graded_betti


def _euclid(cols: List[List[int]], idx: List[int], row: Optional[int]) -> int:
    """Column Euclid on entry ``row`` (or on column sums when ``row`` is None).

    Repeatedly takes the column of smallest nonzero absolute value (lowest
    index on ties) and reduces the others by it, until one value is left.
    That column is made positive and its index is returned.
    """
    def val(j):
        return sum(cols[j]) if row is None else cols[j][row]

    while True:
        live = [j for j in idx if val(j) != 0]
        if not live:
            raise PreconditionError("matrix is singular")
        if len(live) == 1:
            j = live[0]
            if val(j) < 0:
                cols[j] = [-x for x in cols[j]]
            return j
        p = min(live, key=lambda j: (abs(val(j)), j))
        pv = val(p)
        for j in live:
            if j != p:
                q = val(j) // pv
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[p])]


def lattice_to_laplacian_matrix(m) -> IntMatrix:
    """Column operations turning a full-rank square matrix into a reduced Laplacian.

    The result has the same integer column span, a positive diagonal,
    nonpositive off-diagonal entries and nonnegative column sums.
    """
    m = m if isinstance(m, IntMatrix) else IntMatrix(m)
    n = m.rows
    if m.cols != n:
        raise PreconditionError("matrix must be square")
    if n == 0:
        return m
    if determinant(m) == 0:
        raise PreconditionError("matrix is singular")
    c = [list(col) for col in m.columns()]  # c[j] is column j + 1, 0-based rows

    j = _euclid(c, list(range(n)), None)
    c[0], c[j] = c[j], c[0]
    for k in range(2, n):
        # entry in row k - 1 (1-based) over columns k..n
        j = _euclid(c, list(range(k - 1, n)), k - 2)
        c[k - 1], c[j] = c[j], c[k - 1]
        c[k - 1] = [-x for x in c[k - 1]]
    if n >= 2 and c[n - 1][n - 2] > 0:
        c[n - 1] = [-x for x in c[n - 1]]

    def add(dst, src, f=1):
        return [a + f * b for a, b in zip(dst, src)]

    for k in range(n - 1, 0, -1):
        ck = c[k - 1]
        for i in range(k + 2, n + 1):
            while ck[i - 2] > 0:
                ck = add(ck, c[i - 1])
        v = [-x for x in c[k]]
        for i in range(k + 2, n + 1):
            ci = c[i - 1]
            v = [abs(ci[i - 2]) * a + v[i - 2] * b for a, b in zip(v, ci)]
        while ck[k - 1] <= 0 or ck[n - 1] > 0:
            ck = add(ck, v)
        c[k - 1] = ck
    return IntMatrix.from_columns(c)


def is_reduced_laplacian_shape(m: IntMatrix) -> bool:
    n = m.rows
    return all(
        (m[i][j] > 0 if i == j else m[i][j] <= 0) for i in range(n) for j in range(n)
    ) and all(sum(col) >= 0 for col in m.columns())


def graph_from_reduced_laplacian(m: IntMatrix, names: Optional[Sequence[str]] = None) -> Graph:
    """Graph on ``n + 1`` vertices (sink last) whose reduced Laplacian is ``m``."""
    n = m.rows
    if not is_reduced_laplacian_shape(m):
        raise PreconditionError("matrix does not have reduced-Laplacian sign pattern")
    names = list(names) if names else [f"v{i + 1}" for i in range(n + 1)]
    w: Dict = {}
    for j in range(n):
        for i in range(n):
            if i != j and m[i][j]:
                w[(j, i)] = -m[i][j]
        s = sum(m.column(j))
        if s:
            w[(j, n)] = s
    return Graph(names, w)


def lattice_to_laplacian(m) -> Graph:
    """Sandpile graph whose reduced Laplacian spans the same lattice as the columns of ``m``."""
    m = m if isinstance(m, IntMatrix) else IntMatrix(m)
    out = lattice_to_laplacian_matrix(m)
    if column_hnf(out) != column_hnf(m):
        raise AssertionError("column operations changed the lattice")
    return graph_from_reduced_laplacian(out)


def is_mixed(m) -> bool:
    """Every column has a positive and a negative entry."""
    m = m if isinstance(m, IntMatrix) else IntMatrix(m)
    return all(any(x > 0 for x in col) and any(x < 0 for x in col) for col in m.columns())


def is_mixed_dominating(m, cap: int = 8) -> bool:
    """No square submatrix is mixed.  Empty matrices count as dominating."""
    m = m if isinstance(m, IntMatrix) else IntMatrix(m)
    if max(m.rows, m.cols) > cap:
        raise CapExceeded(f"{m.rows}x{m.cols} matrix exceeds the {cap}x{cap} scan cap")
    for k in range(1, min(m.rows, m.cols) + 1):
        for rows in itertools.combinations(range(m.rows), k):
            for cols in itertools.combinations(range(m.cols), k):
                if all(any(m[i][j] > 0 for i in rows) and any(m[i][j] < 0 for i in rows)
                       for j in cols):
                    return False
    return True


def restricted_laplacian(g: Graph) -> IntMatrix:
    """Full Laplacian with the sink column removed."""
    full = laplacian(g)
    return IntMatrix((r[: g.n] for r in full), cols=g.n)


def wire(g1: Graph, g2: Graph, d: Sequence[int],
         beta: Union[Mapping[str, int], Sequence[int]]) -> Graph:
    """Attach the sink of ``g1`` to ``g2``.

    The old sink ``s1`` gets edges back into ``g1`` so that its Laplacian
    column restricted to ``g1`` is the divisor ``d``, and edges into ``g2``
    with weights ``beta`` (by vertex name, or a list over ``g2``'s vertices).
    The sink of the result is the sink of ``g2``.
    """
    if not (g1.has_absolute_sink() and g2.has_absolute_sink()):
        raise PreconditionError("wiring needs absolute sinks on both graphs")
    if set(g1.names) & set(g2.names):
        raise PreconditionError("graphs to be wired must have disjoint vertex names")
    if len(d) != g1.n + 1:
        raise PreconditionError("wiring divisor has the wrong length")
    if any(x > 0 for x in d[: g1.n]):
        raise PreconditionError("wiring divisor must be nonpositive away from the sink")
    if isinstance(beta, Mapping):
        bvec = [0] * (g2.n + 1)
        for name, wgt in beta.items():
            bvec[g2.index(name)] = wgt
    else:
        bvec = list(beta)
        if len(bvec) != g2.n + 1:
            raise PreconditionError("attachment weights have the wrong length")
    if any(x < 0 for x in bvec) or not any(bvec):
        raise PreconditionError("the old sink needs at least one edge into the second graph")
    if sum(bvec) != sum(d):
        raise PreconditionError("attachment weights must sum to the degree of the wiring divisor")
    if not linear_system(g1, d, max_degree=max(sum(d), 0)):
        raise PreconditionError("wiring divisor has an empty linear system")

    off = g1.n + 1
    names = list(g1.names) + list(g2.names)
    w: Dict = {}
    for (u, v), k in g1.weights.items():
        w[(u, v)] = k
    for (u, v), k in g2.weights.items():
        w[(u + off, v + off)] = k
    s1 = g1.n
    for u in range(g1.n):
        if d[u]:
            w[(s1, u)] = -d[u]
    for v, k in enumerate(bvec):
        if k:
            w[(s1, v + off)] = k
    return Graph(names, w)


def _table(g: Graph, table: Optional[BettiTable], threads: int) -> BettiTable:
    return table if table is not None else graded_betti(g, threads=threads)


def is_complete_intersection(g: Graph, table: Optional[BettiTable] = None,
                             threads: int = 1) -> bool:
    """The homogeneous toppling ideal needs exactly ``n`` generators."""
    if g.n == 0:
        return True
    return _table(g, table, threads).coarse[0] == g.n


def is_palindrome(h: Sequence[int]) -> bool:
    return list(h) == list(reversed(h))


def is_gorenstein(g: Graph, table: Optional[BettiTable] = None, threads: int = 1) -> bool:
    """Last Betti number equals one; checked against symmetry of the h-vector."""
    if g.n == 0:
        return True
    top = _table(g, table, threads).coarse[-1] == 1
    sym = is_palindrome(homogeneous_h_vector(g))
    if top != sym:
        raise AssertionError("last Betti number and h-vector symmetry disagree")
    return top


def classify(g: Graph, threads: int = 1) -> dict:
    table = graded_betti(g, threads=threads)
    h = homogeneous_h_vector(g)
    coarse = table.coarse
    return {
        "loopy_tree": is_loopy_tree(g) if is_undirected(g) else None,
        "complete_intersection": is_complete_intersection(g, table),
        "gorenstein": is_gorenstein(g, table),
        "beta_1": coarse[0] if coarse else 0,
        "beta_n": coarse[-1] if coarse else 1,
        "h_vector": h,
        "h_symmetric": is_palindrome(h),
    }
