"""Line bundle cohomology on P^1, on products of P^1, and on elliptic curves.

Everything here is closed form: the P^1 formula, the Kunneth formula for
(P^1)^r, and Riemann-Roch on a genus-one curve. Ext^1 between line bundles
is ``h^1`` of the difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterable


@dataclass(frozen=True)
class MultiDegree:
    """Line bundle ``O(a_1, ..., a_r)`` on ``(P^1)^r``."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        if not self.degrees:
            raise ValueError("a multidegree needs at least one slot")
        object.__setattr__(self, "degrees", tuple(int(a) for a in self.degrees))

    @classmethod
    def of(cls, *degrees: int) -> "MultiDegree":
        return cls(tuple(degrees))

    @classmethod
    def zero(cls, r: int) -> "MultiDegree":
        return cls((0,) * r)

    @classmethod
    def unit(cls, r: int, slot: int, k: int = 1) -> "MultiDegree":
        d = [0] * r
        d[slot] = k
        return cls(tuple(d))

    @property
    def r(self) -> int:
        return len(self.degrees)

    def _check(self, other: "MultiDegree") -> None:
        if other.r != self.r:
            raise ValueError(f"multidegrees of different length: {self} vs {other}")

    def __add__(self, other: "MultiDegree") -> "MultiDegree":
        self._check(other)
        return MultiDegree(tuple(a + b for a, b in zip(self.degrees, other.degrees)))

    def __neg__(self) -> "MultiDegree":
        return MultiDegree(tuple(-a for a in self.degrees))

    def __sub__(self, other: "MultiDegree") -> "MultiDegree":
        return self + (-other)

    def __mul__(self, k: int) -> "MultiDegree":
        return MultiDegree(tuple(k * a for a in self.degrees))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "O(" + ",".join(str(a) for a in self.degrees) + ")"


def h_p1(d: int) -> tuple[int, int]:
    """``(h^0, h^1)`` of ``O(d)`` on P^1."""
    return max(d + 1, 0), max(-d - 1, 0)


def h_multi(a: MultiDegree) -> tuple[int, ...]:
    """``(h^0, ..., h^r)`` of ``O(a)`` on ``(P^1)^r`` by Kunneth."""
    hs = [h_p1(d) for d in a.degrees]
    slots = range(a.r)
    out = []
    for k in range(a.r + 1):
        total = 0
        for top in combinations(slots, k):
            s = set(top)
            total += prod(hs[j][1] if j in s else hs[j][0] for j in slots)
        out.append(total)
    return tuple(out)


def euler_characteristic(a: MultiDegree) -> int:
    return prod(d + 1 for d in a.degrees)


def ext1(source: MultiDegree, target: MultiDegree) -> int:
    """``dim Ext^1(O(source), O(target)) = h^1(O(target - source))``."""
    source._check(target)
    return h_multi(target - source)[1]


def splitting_obstruction(quotient: MultiDegree, sub_summands: Iterable[MultiDegree]) -> int:
    """``dim Ext^1(quotient, sum of sub_summands)``.

    Zero certifies that every extension of ``quotient`` by the sum splits.
    """
    return sum(ext1(quotient, s) for s in sub_summands)


@dataclass(frozen=True)
class EllipticBundleData:
    """What is known about a line bundle on a smooth genus-one curve.

    ``trivial`` matters only in degree 0. ``divisor_nodes`` names the nodes
    through which the divisor of the distinguished section passes. Gluing
    computations support this only for ``O(q)`` with ``q`` a single node.
    """

    degree: int
    trivial: bool = False
    divisor_nodes: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "divisor_nodes", frozenset(self.divisor_nodes))
        if self.degree != 0 and self.trivial:
            raise ValueError("only a degree-0 bundle can be trivial")


def h_elliptic(data: EllipticBundleData) -> tuple[int, int]:
    d = data.degree
    if d > 0:
        return d, 0
    if d < 0:
        return 0, -d
    return (1, 1) if data.trivial else (0, 0)

