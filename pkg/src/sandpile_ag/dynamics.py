"""Configurations, firing, stabilization, burning, recurrence and superstability."""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import List, Sequence, Tuple

from .errors import PreconditionError
from .graph import Graph, reduced_laplacian

Config = Tuple[int, ...]
Script = Tuple[int, ...]


class _Topple:
    """Sparse column view of the reduced Laplacian, cached per graph."""

    def __init__(self, g: Graph):
        m = reduced_laplacian(g)
        self.n = g.n
        self.cols = [m.column(j) for j in range(g.n)]
        # column j as (row, value) pairs, off-diagonal part only
        self.spill = [tuple((i, -m[i][j]) for i in range(g.n) if i != j and m[i][j])
                      for j in range(g.n)]
        self.loss = [m[j][j] for j in range(g.n)]
        self.outdeg = list(g.outdeg[: g.n])


@lru_cache(maxsize=256)
def _topple(g: Graph) -> _Topple:
    return _Topple(g)


def _check_len(g: Graph, c: Sequence[int]) -> None:
    if len(c) != g.n:
        raise PreconditionError(f"configuration has length {len(c)}, expected {g.n}")


def _check_nonneg(c: Sequence[int]) -> None:
    if any(x < 0 for x in c):
        raise PreconditionError("configuration has a negative entry")


def apply_script(g: Graph, c: Sequence[int], sigma: Sequence[int]) -> Config:
    """``c - L sigma`` for the reduced Laplacian ``L``."""
    t = _topple(g)
    out = list(c)
    for j, k in enumerate(sigma):
        if k:
            for i, x in enumerate(t.cols[j]):
                if x:
                    out[i] -= k * x
    return tuple(out)


def fire(g: Graph, c: Sequence[int], v: int) -> Config:
    """Fire nonsink vertex ``v`` once, without checking legality."""
    _check_len(g, c)
    if not 0 <= v < g.n:
        raise PreconditionError("cannot fire the sink")
    return apply_script(g, c, [1 if j == v else 0 for j in range(g.n)])


def is_stable(g: Graph, c: Sequence[int]) -> bool:
    return all(x < d for x, d in zip(c, g.outdeg))


def stabilize(g: Graph, c: Sequence[int]) -> Tuple[Config, Script]:
    """Stabilize a nonnegative configuration; return it with its firing script."""
    _check_len(g, c)
    _check_nonneg(c)
    t = _topple(g)
    cur = list(c)
    sigma = [0] * g.n
    outdeg, loss, spill = t.outdeg, t.loss, t.spill
    work = deque(v for v in range(g.n) if cur[v] >= outdeg[v])
    queued = [cur[v] >= outdeg[v] for v in range(g.n)]
    while work:
        v = work.popleft()
        queued[v] = False
        if cur[v] < outdeg[v]:
            continue
        # fire as often as possible in one go
        k = (cur[v] - outdeg[v]) // loss[v] + 1
        cur[v] -= k * loss[v]
        sigma[v] += k
        for i, w in spill[v]:
            cur[i] += k * w
            if not queued[i] and cur[i] >= outdeg[i]:
                queued[i] = True
                work.append(i)
    return tuple(cur), tuple(sigma)


def stable_add(g: Graph, a: Sequence[int], b: Sequence[int]) -> Config:
    """Stable sum ``(a + b)`` stabilized."""
    for x in (a, b):
        _check_len(g, x)
        _check_nonneg(x)
        if not is_stable(g, x):
            raise PreconditionError("stable_add requires stable summands")
    return stabilize(g, [x + y for x, y in zip(a, b)])[0]


def max_stable(g: Graph) -> Config:
    return tuple(d - 1 for d in g.outdeg[: g.n])


@lru_cache(maxsize=256)
def min_burning_config(g: Graph) -> Tuple[Config, Script]:
    """Minimal burning configuration and its script.

    Start from the sum of the reduced Laplacian columns and add the column of
    the first vertex with a negative entry until nothing is negative.
    """
    t = _topple(g)
    b = [sum(col[i] for col in t.cols) for i in range(g.n)]
    sigma = [1] * g.n
    while True:
        v = next((i for i, x in enumerate(b) if x < 0), None)
        if v is None:
            return tuple(b), tuple(sigma)
        for i, x in enumerate(t.cols[v]):
            b[i] += x
        sigma[v] += 1


def is_recurrent(g: Graph, c: Sequence[int]) -> bool:
    """Burning test: ``c`` is recurrent iff adding the burning config and stabilizing returns ``c``."""
    _check_len(g, c)
    _check_nonneg(c)
    if not is_stable(g, c):
        raise PreconditionError("is_recurrent requires a stable configuration")
    b, _ = min_burning_config(g)
    return stabilize(g, [x + y for x, y in zip(c, b)])[0] == tuple(c)


@lru_cache(maxsize=256)
def identity(g: Graph) -> Config:
    """Identity of the sandpile group as a recurrent configuration."""
    cmax = max_stable(g)
    twice = stabilize(g, [2 * x for x in cmax])[0]
    return stabilize(g, [2 * m - t for m, t in zip(cmax, twice)])[0]


def maximal_legal_script(g: Graph, c: Sequence[int]) -> Script:
    """Largest script ``sigma <= sigma_b`` with ``c - L sigma >= 0``.

    Legal scripts are closed under componentwise max, so a greatest one
    exists; it is found by lowering ``sigma_b`` wherever the result is
    negative.  The zero script means ``c`` is superstable.
    """
    t = _topple(g)
    _, sb = min_burning_config(g)
    sigma = list(sb)
    cur = list(apply_script(g, c, sigma))
    bad = deque(v for v in range(g.n) if cur[v] < 0)
    while bad:
        v = bad.popleft()
        while cur[v] < 0 and sigma[v] > 0:
            sigma[v] -= 1
            cur[v] += t.loss[v]
            for i, w in t.spill[v]:
                cur[i] -= w
                if cur[i] < 0 and sigma[i] > 0:
                    bad.append(i)
    return tuple(sigma)


def is_superstable(g: Graph, c: Sequence[int]) -> bool:
    _check_len(g, c)
    _check_nonneg(c)
    return not any(maximal_legal_script(g, c))


def superstabilize(g: Graph, c: Sequence[int]) -> Tuple[Config, Script]:
    """Unique superstable configuration equivalent to ``c``, with the script used."""
    _check_len(g, c)
    _check_nonneg(c)
    cur, total = stabilize(g, c)
    total = list(total)
    while True:
        s = maximal_legal_script(g, cur)
        if not any(s):
            return cur, tuple(total)
        cur = apply_script(g, cur, s)
        total = [a + b for a, b in zip(total, s)]
