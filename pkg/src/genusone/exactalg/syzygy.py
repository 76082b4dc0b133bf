"""Syzygies of monomial rows and truncated-degree module computations.

The truncated routines are brute-force linear algebra. They serve as the
oracle for the closed-form monomial syzygies and as the way fiber dimensions
``dim M/mM`` of submodules of a free module are measured.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import ColumnIndex, Echelon, sparse_rank
from .points import PointAssignment
from .poly import Monomial, Polynomial, PolyVector, dot, monomial_gcd, monomials_of_degree, monomials_up_to

DEFAULT_DEGREE_BOUND = 6


class StabilizationError(RuntimeError):
    """A truncated computation did not stabilize within the degree bound."""


def _as_monomials(row: Sequence[Monomial | Polynomial]) -> tuple[Monomial, ...]:
    out = []
    for k, x in enumerate(row):
        if isinstance(x, Polynomial):
            mono = x.as_monomial()
            if mono is None:
                raise ValueError(f"entry {k} ({x}) is not a monic monomial")
            x = mono
        out.append(x)
    return tuple(out)


def monomial_syzygies(row: Sequence[Monomial | Polynomial]) -> list[PolyVector]:
    """Pairwise lcm syzygies of a row of monomials.

    For ``i < j`` the vector ``(lcm/m_i) e_i - (lcm/m_j) e_j``. Together they
    generate the full syzygy module of a monomial row.
    """
    if not row:
        raise ValueError("empty row")
    if any(isinstance(x, Polynomial) and x.is_zero() for x in row):
        raise ValueError("row contains a zero entry")
    mons = _as_monomials(row)
    n = len(mons)
    out = []
    for i, j in combinations(range(n), 2):
        l = mons[i].lcm(mons[j])
        vec = [Polynomial()] * n
        vec[i] = Polynomial.from_monomial(l / mons[i])
        vec[j] = Polynomial.from_monomial(l / mons[j], -1)
        out.append(tuple(vec))
    return out


def annihilates(row: Sequence[Monomial | Polynomial], vec: Sequence[Polynomial]) -> bool:
    return dot(row, vec).is_zero()


def _homogeneous_row(row: Sequence[Monomial | Polynomial]) -> tuple[Polynomial, ...]:
    polys = tuple(Polynomial.coerce(x) for x in row)
    for k, p in enumerate(polys):
        if p.is_zero() or not p.is_homogeneous():
            raise ValueError(f"entry {k} ({p}) must be a nonzero homogeneous polynomial")
    return polys


def truncated_kernel_dim(row: Sequence[Monomial | Polynomial], degree_bound: int) -> dict[int, int]:
    """Dimension of the degree-``d`` syzygies of ``row`` for ``d <= degree_bound``.

    Degree is that of ``sum row_k v_k``; so ``v_k`` is homogeneous of degree
    ``d - deg(row_k)``. Each dimension is ``#unknowns - rank`` of the
    coefficient system.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    polys = _homogeneous_row(row)
    names = sorted(set().union(*(p.variables() for p in polys)))
    out = {}
    for d in range(degree_bound + 1):
        eqs = ColumnIndex()
        unknowns = 0
        # each unknown (k, nu) contributes one column; rows are output monomials
        columns: list[dict[int, Fraction]] = []
        for k, p in enumerate(polys):
            for nu in monomials_of_degree(names, d - p.degree):
                col = {}
                for mono, c in p.items():
                    col[eqs[mono * nu]] = c
                columns.append(col)
                unknowns += 1
        # rank of the transpose equals rank of the system
        out[d] = unknowns - sparse_rank(columns)
    return out


def syzygy_span_dims(
    row: Sequence[Monomial | Polynomial], syzygies: Iterable[Sequence[Polynomial]], degree_bound: int
) -> dict[int, int]:
    """Dimension, per degree, of the span of monomial multiples of ``syzygies``."""
    polys = _homogeneous_row(row)
    names = sorted(set().union(*(p.variables() for p in polys)))
    graded = []
    for vec in syzygies:
        degs = {v.degree + p.degree for v, p in zip(vec, polys) if not v.is_zero()}
        if not degs:
            continue
        if len(degs) != 1 or not all(v.is_homogeneous() for v in vec):
            raise ValueError("syzygy is not homogeneous")
        graded.append((degs.pop(), vec))
    out = {}
    for d in range(degree_bound + 1):
        cols = ColumnIndex()
        rows = []
        for e, vec in graded:
            for mu in monomials_of_degree(names, d - e):
                r: dict[int, Fraction] = {}
                for k, v in enumerate(vec):
                    for mono, c in v.items():
                        r[cols[(k, mono * mu)]] = c
                rows.append(r)
        out[d] = sparse_rank(rows)
    return out


@dataclass(frozen=True)
class FiberDim:
    """Result of a truncated fiber-dimension computation."""

    dim: int
    previous: int
    degree_bound: int

    @property
    def stabilized(self) -> bool:
        return self.dim == self.previous

    def value(self) -> int:
        if not self.stabilized:
            raise StabilizationError(
                f"fiber dimension {self.previous} at bound {self.degree_bound - 1} "
                f"but {self.dim} at bound {self.degree_bound}"
            )
        return self.dim


def _truncated_quotient_dim(gens: list[PolyVector], names: list[str], bound: int) -> int:
    """``dim (M + m^D F) / (mM + m^D F)`` with everything centred at the origin."""
    if bound <= 0:
        return 0
    cols = ColumnIndex()
    ncomp = len(gens[0])
    # pivot order follows degree, so low-order terms are eliminated first
    for mono in monomials_up_to(names, bound - 1):
        for k in range(ncomp):
            cols[(mono.degree, k, mono)]

    def row_of(vec: PolyVector) -> dict[int, Fraction]:
        r = {}
        for k, p in enumerate(vec):
            for mono, c in p.items():
                if mono.degree < bound:
                    r[cols[(mono.degree, k, mono)]] = c
        return r

    ech = Echelon()
    for mu in monomials_up_to(names, bound - 1):
        if mu.is_one():
            continue
        m = Polynomial.from_monomial(mu)
        for g in gens:
            ech.add(row_of(tuple((m * p).truncate(bound) for p in g)))
    before = ech.rank
    for g in gens:
        ech.add(row_of(g))
    return ech.rank - before


def fiber_dim_of_submodule(
    generators: Sequence[Sequence[Polynomial]],
    point: PointAssignment,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> FiberDim:
    """Minimal number of generators of ``M = <generators>`` localized at ``point``.

    Coordinates are translated so ``point`` is the origin; then
    ``M/mM`` is measured inside ``F/m^D F`` for ``D = degree_bound - 1`` and
    ``D = degree_bound``. Call :meth:`FiberDim.value` to insist on agreement.
    """
    if degree_bound < 2:
        raise ValueError("degree_bound must be >= 2")
    gens = [tuple(Polynomial.coerce(p) for p in g) for g in generators]
    gens = [g for g in gens if not all(p.is_zero() for p in g)]
    if not gens:
        return FiberDim(0, 0, degree_bound)
    if len({len(g) for g in gens}) != 1:
        raise ValueError("generators have different lengths")
    return _fiber_dim_cached(tuple(gens), point, degree_bound)


@lru_cache(maxsize=4096)
def _fiber_dim_cached(gens: tuple[PolyVector, ...], point: PointAssignment, degree_bound: int) -> FiberDim:
    names = sorted(set().union(*(p.variables() for g in gens for p in g)))
    values = point.as_dict()
    missing = [n for n in names if n not in values]
    if missing:
        raise ValueError(f"point has no value for {missing}")
    shift = {n: values[n] for n in names}
    moved = [tuple(p.translate(shift) for p in g) for g in gens]
    prev = _truncated_quotient_dim(moved, names, degree_bound - 1)
    cur = _truncated_quotient_dim(moved, names, degree_bound)
    return FiberDim(cur, prev, degree_bound)


def monomial_kernel_fiber_dim(
    row: Sequence[Monomial], vanishing: Iterable[str], degree_bound: int = DEFAULT_DEGREE_BOUND
) -> int:
    """Fiber dimension of the syzygies of a monomial row at a generic point of a stratum.

    Parameters outside ``vanishing`` are units near such a point, and scaling
    the entries by units does not change the kernel up to isomorphism; so they
    are set to 1. After dividing by the gcd, a unit entry makes the kernel
    free of rank ``len - 1``; otherwise the fiber is taken at the origin.
    """
    zero = frozenset(vanishing)
    local = tuple(Monomial({n: e for n, e in mono.items if n in zero}) for mono in _as_monomials(row))
    return _monomial_kernel_at_origin(local, degree_bound)


@lru_cache(maxsize=None)
def _monomial_kernel_at_origin(row: tuple[Monomial, ...], degree_bound: int) -> int:
    if len(row) < 2:
        return 0
    g = monomial_gcd(row)
    reduced = tuple(e / g for e in row)
    if any(e.is_one() for e in reduced):
        return len(row) - 1
    names = sorted(set().union(*(e.variables() for e in reduced)))
    point = PointAssignment.from_mapping({n: 0 for n in names})
    return fiber_dim_of_submodule(monomial_syzygies(reduced), point, degree_bound).value()
