"""Points of the parameter space and deterministic generic values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count, islice
from typing import Iterable, Iterator, Mapping


class GenericityError(RuntimeError):
    """Two disjoint generic-value sequences gave different answers."""


def primes() -> Iterator[int]:
    found: list[int] = []
    for n in count(2):
        if all(n % p for p in found if p * p <= n):
            found.append(n)
            yield n


def prime_sequence(n: int, offset: int = 0) -> list[int]:
    return list(islice(primes(), offset, offset + n))


@dataclass(frozen=True)
class PointAssignment:
    """Values of the base parameters at a point.

    Parameters listed in ``stratum`` are exactly the ones that vanish.
    """

    values: tuple[tuple[str, Fraction], ...]
    stratum: frozenset[str]

    def __post_init__(self):
        for name, v in self.values:
            if (v == 0) != (name in self.stratum):
                raise ValueError(f"parameter {name!r}={v} inconsistent with stratum {sorted(self.stratum)}")
        missing = self.stratum - set(self.names)
        if missing:
            raise ValueError(f"stratum names without values: {sorted(missing)}")

    @classmethod
    def from_mapping(cls, values: Mapping[str, int | Fraction]) -> "PointAssignment":
        vals = tuple(sorted((n, Fraction(v)) for n, v in values.items()))
        return cls(vals, frozenset(n for n, v in vals if v == 0))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.values)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.values)

    def restrict(self, names: Iterable[str]) -> "PointAssignment":
        keep = set(names)
        return PointAssignment.from_mapping({n: v for n, v in self.values if n in keep})

    def __str__(self) -> str:
        return "(" + ", ".join(f"{n}={v}" for n, v in self.values) + ")"


def generic_point(names: Iterable[str], stratum: Iterable[str] = (), sequence: int = 0) -> PointAssignment:
    """Zero on ``stratum``, primes elsewhere.

    ``sequence=0`` uses 2, 3, 5, ... in parameter order; ``sequence=1`` uses
    the next block of primes (11, 13, ... for up to four parameters),
    disjoint from the first.
    """
    names = list(dict.fromkeys(names))
    zero = set(stratum)
    if not zero <= set(names):
        raise ValueError(f"stratum {sorted(zero - set(names))} not among parameters")
    vals = prime_sequence(len(names), offset=sequence * max(len(names), 4))
    return PointAssignment.from_mapping({n: (0 if n in zero else p) for n, p in zip(names, vals)})


def origin(names: Iterable[str]) -> PointAssignment:
    return PointAssignment.from_mapping({n: 0 for n in names})
