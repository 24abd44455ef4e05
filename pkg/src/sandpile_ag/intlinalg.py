"""Exact integer linear algebra.

Everything here works on Python ints, so entries never overflow.  Matrices
are :class:`IntMatrix` values (immutable, row-major); most helpers also accept
a plain list of rows.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .errors import GraphFormatError, PreconditionError

Vector = Tuple[int, ...]


class IntMatrix:
    """Immutable rectangular matrix of arbitrary-precision integers."""

    __slots__ = ("_rows", "rows", "cols", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], cols: int | None = None):
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        self._rows = data
        self.rows = len(data)
        self.cols = cols
        self._hash = hash((self.rows, self.cols, data))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        if not columns:
            return cls((() for _ in range(rows or 0)), cols=0)
        return cls(zip(*columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n))

    def __getitem__(self, i: int) -> Vector:
        return self._rows[i]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self) -> int:
        return self.rows

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMatrix):
            return self.cols == other.cols and self._rows == other._rows
        try:
            return self._rows == tuple(tuple(r) for r in other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._rows]})"

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.columns(), cols=self.rows)

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self._rows]

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            oc = other.columns()
            return IntMatrix(
                (sum(a * b for a, b in zip(r, c)) for c in oc) for r in self._rows
            ) if self.rows else IntMatrix((), cols=other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._rows)

    def delete(self, row: int, col: int) -> "IntMatrix":
        return IntMatrix(
            (x for j, x in enumerate(r) if j != col)
            for i, r in enumerate(self._rows) if i != row
        ) if self.rows > 1 else IntMatrix((), cols=max(self.cols - 1, 0))

    def format(self) -> str:
        """One row per line, whitespace separated."""
        return "\n".join(" ".join(str(x) for x in r) for r in self._rows)


def parse_matrix(text: str) -> IntMatrix:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer matrix entry") from None
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise GraphFormatError("matrix rows have different lengths")
    return IntMatrix(rows)


def determinant(m) -> int:
    """Fraction-free (Bareiss) determinant."""
    a = [list(r) for r in m]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    a = [list(r) for r in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r, prev = 0, 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            aic = a[i][c]
            for j in range(c, cols):
                a[i][j] = (a[i][j] * p - aic * a[r][j]) // prev
        prev = p
        r += 1
        if r == rows:
            break
    return r


def rank_mod_p(m, p: int) -> int:
    """Rank over GF(p); used to cross-check :func:`rank`."""
    a = [[x % p for x in r] for r in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def solve(m, b: Sequence[int]) -> Tuple[Fraction, ...]:
    """Solve ``m x = b`` exactly for square nonsingular ``m``."""
    n = len(m)
    a = [[Fraction(x) for x in r] + [Fraction(bi)] for r, bi in zip(m, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise PreconditionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(a[i][n] for i in range(n))


def _eye(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(m) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` and U, V unimodular.

    D is diagonal with nonnegative entries, each dividing the next; zero
    entries (rank deficiency) come last.  Pivots are chosen by minimal
    nonzero absolute value.
    """
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U, V = _eye(rows), _eye(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for r in a:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return IntMatrix(U), IntMatrix(a, cols=cols), IntMatrix(V)


def invariant_factors_of(m) -> List[int]:
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(d.rows, d.cols))]


def hermite_normal_form(generators: Iterable[Sequence[int]]) -> Tuple[Vector, ...]:
    """Row-style Hermite normal form of the lattice spanned by ``generators``.

    Returns the nonzero basis vectors in echelon order: strictly increasing
    pivot positions, positive pivots, and entries above each pivot reduced
    into ``[0, pivot)``.  Two generating sets span the same lattice iff their
    outputs are equal.
    """
    vecs = [list(v) for v in generators if any(v)]
    if not vecs:
        return ()
    dim = len(vecs[0])
    basis: List[List[int]] = []
    col = 0
    while vecs and col < dim:
        active = [v for v in vecs if v[col] != 0]
        if not active:
            col += 1
            continue
        rest = [v for v in vecs if v[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda v: abs(v[col]))
            piv = active[0]
            nxt = [piv]
            for v in active[1:]:
                q = v[col] // piv[col]
                w = [x - q * y for x, y in zip(v, piv)]
                if w[col] != 0:
                    nxt.append(w)
                elif any(w):
                    rest.append(w)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for b in basis:
            q = b[col] // piv[col]
            if q:
                b[:] = [x - q * y for x, y in zip(b, piv)]
        basis.append(piv)
        vecs = rest
        col += 1
    return tuple(tuple(b) for b in basis)


def lattice_contains(hnf: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the lattice with Hermite basis ``hnf``."""
    w = list(v)
    for b in hnf:
        p = next(i for i, x in enumerate(b) if x)
        if any(w[:p]):
            return False
        if w[p] % b[p]:
            return False
        q = w[p] // b[p]
        if q:
            w = [x - q * y for x, y in zip(w, b)]
    return not any(w)


def column_hnf(m) -> Tuple[Vector, ...]:
    """Hermite basis for the integer column span of ``m``."""
    m = m if isinstance(m, IntMatrix) else IntMatrix(m)
    return hermite_normal_form(m.columns())
