"""Toppling ideals as binomial sets: monomial order, Groebner bases, normal forms.

Binomials are never expanded into general polynomials.  A binomial is a
pair of exponent vectors with disjoint supports, and all reductions stay
inside that representation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, List, Optional, Sequence, Tuple

from .dynamics import max_stable, min_burning_config
from .errors import CapExceeded, HomogenizationError, PreconditionError
from .graph import Graph, laplacian, reduced_laplacian
from .group import DEFAULT_MAX_ORDER, enumerate_superstables
from .intlinalg import hermite_normal_form, lattice_contains

Exponent = Tuple[int, ...]
DEFAULT_MAX_BOX = 10 ** 6


@dataclass(frozen=True)
class Binomial:
    """``x^plus - x^minus`` with disjoint supports."""

    plus: Exponent
    minus: Exponent

    def __post_init__(self):
        if len(self.plus) != len(self.minus):
            raise ValueError("exponent vectors differ in length")
        if any(a and b for a, b in zip(self.plus, self.minus)):
            raise ValueError("binomial terms share a variable")

    @classmethod
    def from_vector(cls, u: Sequence[int]) -> "Binomial":
        return cls(tuple(max(x, 0) for x in u), tuple(max(-x, 0) for x in u))

    @property
    def vector(self) -> Tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    def is_zero(self) -> bool:
        return self.plus == self.minus

    def flipped(self) -> "Binomial":
        return Binomial(self.minus, self.plus)

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        """Human-readable form such as ``x1^2 - x2*x3``."""
        names = names or [f"x{i + 1}" for i in range(len(self.plus))]
        return f"{format_monomial(self.plus, names)} - {format_monomial(self.minus, names)}"

    def __str__(self) -> str:
        return self.format()


def format_monomial(e: Sequence[int], names: Sequence[str]) -> str:
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
    return "*".join(parts) if parts else "1"


class SandpileOrder:
    """Graded reverse lexicographic order with a fixed variable precedence.

    ``precedence`` lists variable indices from largest to smallest.
    """

    def __init__(self, precedence: Sequence[int]):
        self.precedence = tuple(precedence)
        if sorted(self.precedence) != list(range(len(self.precedence))):
            raise ValueError("precedence must be a permutation")
        self._rev = tuple(reversed(self.precedence))

    @classmethod
    def for_graph(cls, g: Graph, homogeneous: bool = False) -> "SandpileOrder":
        """Vertices farther from the sink are larger; ties go to the lower index.

        In the homogeneous case the sink variable is appended as the smallest.
        """
        dist = g.distances_to_sink
        prec = sorted(range(g.n), key=lambda i: (-dist[i], i))
        if homogeneous:
            prec.append(g.n)
        return cls(prec)

    def key(self, a: Sequence[int]):
        if len(a) != len(self.precedence):
            raise PreconditionError("exponent vector has the wrong length")
        return (sum(a), tuple(-a[i] for i in self._rev))

    def cmp(self, a: Sequence[int], b: Sequence[int]) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def orient(self, f: Binomial) -> Binomial:
        """Put the leading term first."""
        return f if self.cmp(f.plus, f.minus) >= 0 else f.flipped()

    def __eq__(self, other) -> bool:
        return isinstance(other, SandpileOrder) and self.precedence == other.precedence

    def __hash__(self) -> int:
        return hash(self.precedence)

    def __repr__(self) -> str:
        return f"SandpileOrder({list(self.precedence)})"


def monomial_cmp(order: SandpileOrder, a: Sequence[int], b: Sequence[int]) -> int:
    """-1, 0 or 1 as ``x^a`` is smaller than, equal to or larger than ``x^b``."""
    if len(a) != len(b):
        raise PreconditionError("exponent vectors differ in length")
    return order.cmp(a, b)


def toppling_generators(g: Graph) -> List[Binomial]:
    """One toppling binomial per nonsink vertex, then ``x^b - 1`` for the burning config."""
    out = []
    for i in range(g.n):
        plus = [0] * g.n
        plus[i] = g.outdeg[i] - g.wt(i, i)
        minus = [g.wt(i, j) if j != i else 0 for j in range(g.n)]
        out.append(Binomial(tuple(plus), tuple(minus)))
    b, _ = min_burning_config(g)
    out.append(Binomial(b, (0,) * g.n))
    return out


def box_size(g: Graph) -> int:
    _, sb = min_burning_config(g)
    return prod(s + 1 for s in sb)


@lru_cache(maxsize=64)
def _full_basis(g: Graph) -> Tuple[Binomial, ...]:
    order = SandpileOrder.for_graph(g)
    cols = reduced_laplacian(g).columns()
    _, sb = min_burning_config(g)
    out = []
    for sigma in itertools.product(*(range(s + 1) for s in sb)):
        if not any(sigma):
            continue
        u = [0] * g.n
        for j, k in enumerate(sigma):
            if k:
                for i, x in enumerate(cols[j]):
                    u[i] += k * x
        f = Binomial.from_vector(u)
        if not f.is_zero():
            out.append(order.orient(f))
    return tuple(out)


def minimalize_basis(basis: Sequence[Binomial]) -> List[Binomial]:
    """Drop members whose leading term is divisible by another member's.

    Of several members with the same leading term the first one is kept.
    """
    keep = []
    for i, f in enumerate(basis):
        redundant = False
        for j, h in enumerate(basis):
            if j == i or not divides(h.plus, f.plus):
                continue
            if h.plus != f.plus or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(f)
    return keep


def groebner_basis(g: Graph, minimalize: bool = False,
                   max_box: int = DEFAULT_MAX_BOX) -> List[Binomial]:
    """Groebner basis from firing every script between zero and the burning script.

    Leading terms come first in each binomial.  Members are ordered by
    script in lexicographic order.
    """
    size = box_size(g)
    if size > max_box:
        raise CapExceeded(f"script box has {size} elements, cap is {max_box}")
    basis = list(_full_basis(g))
    if minimalize:
        basis = minimalize_basis(basis)
    return basis


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(basis: Sequence[Binomial], order: SandpileOrder,
                m: Sequence[int]) -> Exponent:
    """Reduce the monomial ``x^m`` to normal form modulo a Groebner basis."""
    if any(x < 0 for x in m):
        raise PreconditionError("monomial exponents must be nonnegative")
    cur = list(m)
    while True:
        for f in basis:
            if divides(f.plus, cur):
                cur = [c - p + q for c, p, q in zip(cur, f.plus, f.minus)]
                break
        else:
            return tuple(cur)


def reduces_to_zero(f: Binomial, basis: Sequence[Binomial], order: SandpileOrder) -> bool:
    """Whether the binomial lies in the ideal of a Groebner basis."""
    return normal_form(basis, order, f.plus) == normal_form(basis, order, f.minus)


def s_binomial(f: Binomial, h: Binomial) -> Binomial:
    """S-polynomial of two oriented binomials (again a binomial, maybe zero)."""
    lcm = [max(a, b) for a, b in zip(f.plus, h.plus)]
    left = [l - p + q for l, p, q in zip(lcm, f.plus, f.minus)]
    right = [l - p + q for l, p, q in zip(lcm, h.plus, h.minus)]
    common = [min(a, b) for a, b in zip(left, right)]
    return Binomial(tuple(a - c for a, c in zip(left, common)),
                    tuple(b - c for b, c in zip(right, common)))


def in_reduced_lattice(g: Graph, u: Sequence[int]) -> bool:
    """Whether ``u`` lies in the column lattice of the reduced Laplacian."""
    return lattice_contains(_reduced_hnf(g), u)


@lru_cache(maxsize=256)
def _reduced_hnf(g: Graph):
    return hermite_normal_form(reduced_laplacian(g).columns())


@lru_cache(maxsize=256)
def full_lattice_hnf(g: Graph):
    """Hermite basis of the full Laplacian lattice (homogeneous toppling lattice)."""
    return hermite_normal_form(laplacian(g).columns())


def homogenization_hypothesis(g: Graph) -> bool:
    """Whether the sink column of the Laplacian is an integer combination of the others."""
    lap = laplacian(g)
    others = hermite_normal_form(lap.columns()[: g.n])
    return lattice_contains(others, lap.column(g.n))


def homogenize(f: Binomial) -> Binomial:
    """Pad the lower-degree term with the new last variable."""
    dp, dm = sum(f.plus), sum(f.minus)
    return Binomial(f.plus + (max(dm - dp, 0),), f.minus + (max(dp - dm, 0),))


def homogeneous_basis(g: Graph, minimalize: bool = False,
                      max_box: int = DEFAULT_MAX_BOX) -> List[Binomial]:
    """Groebner basis of the homogeneous toppling ideal (sink variable last)."""
    if not homogenization_hypothesis(g):
        raise HomogenizationError(
            "the sink column of the Laplacian is not in the span of the other columns; "
            "the homogenized toppling ideal differs from the homogeneous one")
    return [homogenize(f) for f in groebner_basis(g, minimalize, max_box)]


def h_vector(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> Tuple[List[int], int]:
    """Degree histogram of the superstables, with the postulation number (top degree)."""
    sup = enumerate_superstables(g, max_order)
    top = max(sum(c) for c in sup)
    h = [0] * (top + 1)
    for c in sup:
        h[sum(c)] += 1
    return h, top


def affine_hilbert(g: Graph, d: int, max_order: int = DEFAULT_MAX_ORDER) -> int:
    """Number of superstables of degree at most ``d``."""
    if d < 0:
        raise PreconditionError("degree must be nonnegative")
    h, _ = h_vector(g, max_order)
    return sum(h[: d + 1])


def normal_basis_size(g: Graph, basis: Iterable[Binomial]) -> int:
    """Count monomials in the box below the maximal stable config not divisible by a leading term."""
    leads = [f.plus for f in basis]
    cmax = max_stable(g)
    return sum(1 for m in itertools.product(*(range(c + 1) for c in cmax))
               if not any(divides(p, m) for p in leads))
