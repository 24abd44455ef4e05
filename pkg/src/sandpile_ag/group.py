"""Sandpile group: invariant factors, element enumeration, characters."""
from __future__ import annotations

import cmath
import itertools
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from .dynamics import (Config, _check_len, _check_nonneg, is_superstable,
                       max_stable, stabilize, superstabilize)
from .errors import CapExceeded, PreconditionError
from .graph import Graph, reduced_laplacian, spanning_tree_weight
from .intlinalg import IntMatrix, smith_normal_form

DEFAULT_MAX_ORDER = 10 ** 6


@lru_cache(maxsize=256)
def smith_data(g: Graph) -> Tuple[IntMatrix, Tuple[int, ...], IntMatrix]:
    """``(U, factors, V)`` with ``U L V = diag(factors)`` for the reduced Laplacian ``L``."""
    u, d, v = smith_normal_form(reduced_laplacian(g))
    return u, tuple(d[i][i] for i in range(g.n)), v


def invariant_factors(g: Graph) -> List[int]:
    return list(smith_data(g)[1])


def group_order(g: Graph) -> int:
    return spanning_tree_weight(g)


def _check_order(g: Graph, cap: int) -> int:
    order = group_order(g)
    if order > cap:
        raise CapExceeded(f"group order {order} exceeds cap {cap}")
    return order


@lru_cache(maxsize=64)
def _recurrents(g: Graph) -> Tuple[Config, ...]:
    start = max_stable(g)
    seen = {start}
    todo = deque([start])
    while todo:
        c = todo.popleft()
        for v in range(g.n):
            nxt = list(c)
            nxt[v] += 1
            r = stabilize(g, nxt)[0]
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return tuple(sorted(seen, key=lambda c: (-sum(c), tuple(-x for x in c))))


def enumerate_recurrents(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> List[Config]:
    """All recurrent configurations, reached from the maximal stable one by adding grains.

    Sorted by decreasing degree, then reverse lexicographically, so that the
    maximal stable configuration comes first.
    """
    order = _check_order(g, max_order)
    recs = list(_recurrents(g))
    if len(recs) != order:
        raise AssertionError(f"found {len(recs)} recurrents, expected {order}")
    return recs


def enumerate_superstables(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> List[Config]:
    """All superstables, sorted by degree then lexicographically."""
    cmax = max_stable(g)
    sup = [tuple(m - x for m, x in zip(cmax, r)) for r in enumerate_recurrents(g, max_order)]
    return sorted(sup, key=lambda c: (sum(c), c))


def group_add(g: Graph, a: Sequence[int], b: Sequence[int]) -> Config:
    """Sum of two superstables, as a superstable."""
    for x in (a, b):
        _check_len(g, x)
        _check_nonneg(x)
        if not is_superstable(g, x):
            raise PreconditionError("group_add requires superstable configurations")
    return superstabilize(g, [x + y for x, y in zip(a, b)])[0]


def class_vector(g: Graph, c: Sequence[int]) -> Tuple[int, ...]:
    """Coordinates of ``c`` in the cyclic decomposition, reduced mod each factor."""
    u, d, _ = smith_data(g)
    img = u @ tuple(c)
    return tuple(x % f for x, f in zip(img, d))


def orbit_points(g: Graph, max_order: int = 10 ** 4) -> List[Tuple[complex, ...]]:
    """Evaluate every character of the sandpile group on the vertex classes.

    Each point is ``(chi(e_1), ..., chi(e_n))``.  Points are listed in the
    lexicographic order of the character exponents.
    """
    _check_order(g, max_order)
    u, d, _ = smith_data(g)
    active = [j for j, f in enumerate(d) if f != 1]
    # image of each basis vector in the cyclic factors that matter
    images = [[u[j][i] for j in active] for i in range(g.n)]
    mods = [d[j] for j in active]
    points = []
    for ks in itertools.product(*(range(f) for f in mods)):
        pt = []
        for img in images:
            phase = sum((Fraction(k * a % f, f) for k, a, f in zip(ks, img, mods)), Fraction(0))
            pt.append(cmath.exp(2j * cmath.pi * float(phase % 1)))
        points.append(tuple(pt))
    return points


def _monomial(point: Sequence[complex], e: Sequence[int]) -> complex:
    out = 1 + 0j
    for z, k in zip(point, e):
        if k:
            out *= z ** k
    return out


def verify_vanishing(g: Graph, max_order: int = 10 ** 4, max_box: int = 10 ** 6) -> float:
    """Largest |x^plus - x^minus| over Groebner basis binomials and orbit points."""
    from .ideal import groebner_basis

    pts = orbit_points(g, max_order)
    basis = groebner_basis(g, minimalize=False, max_box=max_box)
    worst = 0.0
    for p in pts:
        for f in basis:
            worst = max(worst, abs(_monomial(p, f.plus) - _monomial(p, f.minus)))
    return worst
