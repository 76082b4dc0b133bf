"""Exact linear algebra over Q.

Ranks use fraction-free elimination on integer rows stored sparsely; kernels
use Gauss-Jordan over ``Fraction``. A prime-field rank is provided only as an
independent cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping, Sequence

SparseRow = Mapping[int, Fraction | int]


def _integral(row: SparseRow) -> dict[int, int]:
    """Scale a rational sparse row to a primitive integer row."""
    items = {k: Fraction(v) for k, v in row.items() if v != 0}
    if not items:
        return {}
    den = reduce(lcm, (v.denominator for v in items.values()), 1)
    ints = {k: int(v * den) for k, v in items.items()}
    g = reduce(gcd, ints.values())
    return {k: v // g for k, v in ints.items()}


class Echelon:
    """Incremental row echelon form with fraction-free integer updates.

    Rows are dicts ``column -> coefficient``; the pivot of a stored row is its
    smallest column index, so callers control pivot order through column
    numbering.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: SparseRow) -> dict[int, int]:
        r = _integral(row)
        while r:
            p = min(r)
            prow = self.pivots.get(p)
            if prow is None:
                return r
            a, b = prow[p], r[p]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {k: fa * v for k, v in r.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - fb * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            r = _integral(new)
        return r

    def add(self, row: SparseRow) -> bool:
        """Insert ``row``; return True when it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True


def _sparse_rows(m: Sequence[Sequence[Fraction | int]]) -> list[dict[int, Fraction | int]]:
    return [{j: v for j, v in enumerate(row) if v != 0} for row in m]


def sparse_rank(rows: Iterable[SparseRow]) -> int:
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return ech.rank


def matrix_rank(m: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank of a rational matrix (exact). The empty matrix has rank 0."""
    return sparse_rank(_sparse_rows(m))


def rank_mod_p(m: Sequence[Sequence[Fraction | int]], p: int) -> int:
    """Rank over GF(p); entries must have denominators prime to ``p``."""
    rows = []
    for row in m:
        r = []
        for v in row:
            v = Fraction(v)
            r.append(v.numerator * pow(v.denominator, -1, p) % p)
        rows.append(r)
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def rref(m: Sequence[Sequence[Fraction | int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[Fraction(v) for v in row] for row in m]
    pivots: list[int] = []
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def kernel_basis(m: Sequence[Sequence[Fraction | int]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : m v = 0}``.

    ``ncols`` is needed only when ``m`` has no rows.
    """
    if ncols is None:
        if not m:
            raise ValueError("ncols required for a matrix without rows")
        ncols = len(m[0])
    red, pivots = rref(m) if m else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def mat_vec(m: Sequence[Sequence[Fraction | int]], v: Sequence[Fraction | int]) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in m]


def transpose(m: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction | int]]:
    return [list(col) for col in zip(*m)] if m else []


class ColumnIndex:
    """Assigns consecutive column numbers to hashable keys."""

    def __init__(self, keys: Iterable[Hashable] = ()):
        self._idx: dict[Hashable, int] = {}
        for k in keys:
            self[k]

    def __getitem__(self, key: Hashable) -> int:
        if key not in self._idx:
            self._idx[key] = len(self._idx)
        return self._idx[key]

    def __len__(self) -> int:
        return len(self._idx)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._idx
