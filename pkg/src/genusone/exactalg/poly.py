"""Sparse monomials and polynomials over named parameters with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import comb
from typing import Iterable, Iterator, Mapping, Union

Scalar = Fraction
Number = Union[int, Fraction]


def scalar(value: Number | str) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class Monomial:
    """A power product of named parameters.

    Exponents are stored as a sorted tuple of ``(name, exponent)`` pairs with
    no zero exponents, so equality and hashing are structural. Negative
    exponents are allowed only when ``laurent=True`` is requested (used by the
    trivialization checker); ordinary polynomial code never produces them.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[str, int] | Iterable[tuple[str, int]] = (), *, laurent: bool = False):
        items = dict(exponents.items() if isinstance(exponents, Mapping) else exponents)
        for name, e in items.items():
            if not isinstance(e, int):
                raise TypeError(f"exponent of {name!r} must be an int, got {e!r}")
            if e < 0 and not laurent:
                raise ValueError(f"negative exponent {e} for {name!r}")
        self._items = tuple(sorted((n, e) for n, e in items.items() if e != 0))
        self._hash = hash(self._items)

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Monomial":
        return cls({name: power})

    @classmethod
    def one(cls) -> "Monomial":
        return cls()

    @property
    def items(self) -> tuple[tuple[str, int], ...]:
        return self._items

    def exponents(self) -> dict[str, int]:
        return dict(self._items)

    def __getitem__(self, name: str) -> int:
        for n, e in self._items:
            if n == name:
                return e
        return 0

    def variables(self) -> frozenset[str]:
        return frozenset(n for n, _ in self._items)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self._items)

    def is_one(self) -> bool:
        return not self._items

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        # lexicographic on parameter names, then degree
        return (self._items, self.degree)

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        e = self.exponents()
        for n, k in other._items:
            e[n] = e.get(n, 0) + k
        return Monomial(e, laurent=True)

    def __pow__(self, k: int) -> "Monomial":
        return Monomial({n: e * k for n, e in self._items}, laurent=True)

    def inverse(self) -> "Monomial":
        return Monomial({n: -e for n, e in self._items}, laurent=True)

    def divides(self, other: "Monomial") -> bool:
        return all(other[n] >= e for n, e in self._items)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial({n: e - other[n] for n, e in self._items})

    def lcm(self, other: "Monomial") -> "Monomial":
        names = self.variables() | other.variables()
        return Monomial({n: max(self[n], other[n]) for n in names})

    def gcd(self, other: "Monomial") -> "Monomial":
        names = self.variables() & other.variables()
        return Monomial({n: min(self[n], other[n]) for n in names})

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        out = Fraction(1)
        for n, e in self._items:
            out *= scalar(values[n]) ** e
        return out

    def substitute(self, mapping: Mapping[str, "Monomial"]) -> "Monomial":
        """Monomial substitution ``name -> monomial``; unmapped names are kept."""
        out = Monomial.one()
        for n, e in self._items:
            out = out * (mapping[n] ** e if n in mapping else Monomial({n: e}, laurent=True))
        return out

    def __str__(self) -> str:
        if not self._items:
            return "1"
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in self._items)

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"


def monomial_gcd(monomials: Iterable[Monomial]) -> Monomial:
    return reduce(Monomial.gcd, monomials)


def monomials_of_degree(names: Iterable[str], degree: int) -> Iterator[Monomial]:
    """All monomials of the given total degree in ``names``, in a fixed order."""
    names = tuple(sorted(names))
    if degree < 0:
        return
    if not names:
        if degree == 0:
            yield Monomial.one()
        return

    def rec(i: int, left: int, acc: dict):
        if i == len(names) - 1:
            acc[names[i]] = left
            yield Monomial(acc)
            return
        for e in range(left, -1, -1):
            acc[names[i]] = e
            yield from rec(i + 1, left - e, acc)
        acc.pop(names[i], None)

    yield from rec(0, degree, {})


def monomials_up_to(names: Iterable[str], degree: int) -> list[Monomial]:
    names = tuple(names)
    return [mono for d in range(degree + 1) for mono in monomials_of_degree(names, d)]


class Polynomial:
    """Immutable sparse polynomial ``{Monomial: Fraction}`` with no zero terms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | Iterable[tuple[Monomial, Number]] = ()):
        acc: dict[Monomial, Fraction] = {}
        for mono, c in (terms.items() if isinstance(terms, Mapping) else terms):
            acc[mono] = acc.get(mono, Fraction(0)) + scalar(c)
        self._terms = {m: c for m, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        return cls({Monomial.one(): c})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({Monomial.var(name): 1})

    @classmethod
    def from_monomial(cls, mono: Monomial, c: Number = 1) -> "Polynomial":
        return cls({mono: c})

    @staticmethod
    def coerce(x: "Polynomial | Monomial | Number") -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, Monomial):
            return Polynomial.from_monomial(x)
        return Polynomial.constant(x)

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> frozenset[str]:
        return frozenset().union(*(m.variables() for m in self._terms)) if self._terms else frozenset()

    @property
    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self._terms}) <= 1

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def as_monomial(self) -> Monomial | None:
        """The monomial if this is ``1 * monomial``, else None."""
        if len(self._terms) == 1:
            (mono, c), = self._terms.items()
            if c == 1:
                return mono
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Monomial)):
            other = Polynomial.coerce(other)
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "Polynomial":
        other = Polynomial.coerce(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return Polynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = Polynomial.coerce(other)
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return Polynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        return sum((c * m.evaluate(values) for m, c in self._terms.items()), Fraction(0))

    def substitute(self, mapping: Mapping[str, "Polynomial | Monomial | Number"]) -> "Polynomial":
        mapping = {n: Polynomial.coerce(v) for n, v in mapping.items()}
        out = Polynomial()
        for mono, c in self._terms.items():
            term = Polynomial.constant(c)
            for n, e in mono.items:
                term = term * (mapping[n] ** e if n in mapping else Polynomial.var(n) ** e)
            out = out + term
        return out

    def translate(self, shift: Mapping[str, Number]) -> "Polynomial":
        """Substitute ``x -> x + shift[x]``, expanding binomially."""
        acc: dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            parts: list[list[tuple[Monomial, Fraction]]] = []
            for n, e in mono.items:
                a = scalar(shift.get(n, 0))
                if a == 0:
                    parts.append([(Monomial({n: e}), Fraction(1))])
                else:
                    parts.append([(Monomial({n: j}), comb(e, j) * a ** (e - j)) for j in range(e + 1)])
            expanded = [(Monomial.one(), c)]
            for part in parts:
                expanded = [(m1 * m2, c1 * c2) for m1, c1 in expanded for m2, c2 in part]
            for m, v in expanded:
                acc[m] = acc.get(m, Fraction(0)) + v
        return Polynomial(acc)

    def truncate(self, degree: int) -> "Polynomial":
        """Drop all terms of total degree ``>= degree``."""
        return Polynomial({m: c for m, c in self._terms.items() if m.degree < degree})

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda mc: (-mc[0].degree, mc[0].sort_key()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if m.is_one():
                body = str(a)
            elif a == 1:
                body = str(m)
            else:
                body = f"{a}*{m}"
            out.append((("-" if sign == "-" else "") if i == 0 else f" {sign} ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


PolyVector = tuple[Polynomial, ...]


def dot(row: Iterable[Polynomial | Monomial], vec: Iterable[Polynomial]) -> Polynomial:
    return sum((Polynomial.coerce(a) * b for a, b in zip(row, vec)), Polynomial())


class PolyMatrix:
    """Dense matrix of polynomials (rows x cols)."""

    def __init__(self, entries: Iterable[Iterable[Polynomial | Monomial | Number]]):
        self.entries = tuple(tuple(Polynomial.coerce(x) for x in row) for row in entries)
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        self.rows = len(self.entries)
        self.cols = widths.pop() if widths else 0

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return PolyMatrix(
            [[dot(self.entries[i], [other.entries[k][j] for k in range(other.rows)]) for j in range(other.cols)]
             for i in range(self.rows)]
        )

    def evaluate(self, values: Mapping[str, Number]) -> list[list[Fraction]]:
        return [[p.evaluate(values) for p in row] for row in self.entries]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __repr__(self) -> str:
        return "PolyMatrix([" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "])"
