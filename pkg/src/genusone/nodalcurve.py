"""Dual graphs of nodal curves of arithmetic genus at most one.

Cohomology of a line bundle ``L`` on a nodal curve comes from the
normalization sequence

    0 -> L -> (+) L|C_i -> (+) k(node) -> 0

realized as an explicit matrix: one row per node, holding the difference of
the evaluations of the section bases of the two branches.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .cohomology import EllipticBundleData, h_elliptic, h_p1
from .exactalg.linalg import matrix_rank
from .exactalg.points import prime_sequence

ZERO = "0"  # the point [1,0] of a rational component
INFINITY = "inf"  # the point [0,1]


class UnsupportedEvaluation(ValueError):
    """The elliptic data does not determine the evaluation at the nodes."""


@dataclass(frozen=True)
class Component:
    id: str
    genus: int = 0

    def __post_init__(self):
        if self.genus not in (0, 1):
            raise ValueError(f"component {self.id!r}: genus must be 0 or 1")


@dataclass(frozen=True)
class Endpoint:
    """A branch of a node: a point ``label`` on ``component``.

    On a rational component the label is ``"0"``, ``"inf"`` or the name of a
    generic point; on an elliptic component it is just a name.
    """

    component: str
    label: str

    def __str__(self) -> str:
        return f"{self.component}:{self.label}"


@dataclass(frozen=True)
class Node:
    name: str
    a: Endpoint
    b: Endpoint


@dataclass(frozen=True)
class CurveGraph:
    components: tuple[Component, ...]
    nodes: tuple[Node, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "nodes", tuple(self.nodes))
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate component ids")
        if not ids:
            raise ValueError("a curve needs a component")
        names = [n.name for n in self.nodes]
        if len(set(names)) != len(names):
            raise ValueError("duplicate node names")
        seen: set[tuple[str, str]] = set()
        for n in self.nodes:
            for e in (n.a, n.b):
                if e.component not in ids:
                    raise ValueError(f"node {n.name!r} refers to unknown component {e.component!r}")
                if (e.component, e.label) in seen:
                    raise ValueError(f"point {e} used by two branches")
                seen.add((e.component, e.label))
        if not self._connected():
            raise ValueError("dual graph is not connected")
        if self.arithmetic_genus > 1:
            raise ValueError(f"arithmetic genus {self.arithmetic_genus} > 1 is not supported")

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.components)

    def neighbours(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {c.id: [] for c in self.components}
        for n in self.nodes:
            adj[n.a.component].append(n.b.component)
            adj[n.b.component].append(n.a.component)
        return adj

    def _connected(self) -> bool:
        adj = self.neighbours()
        start = self.components[0].id
        stack, seen = [start], {start}
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.components)

    @property
    def loops(self) -> int:
        return len(self.nodes) - len(self.components) + 1

    @property
    def arithmetic_genus(self) -> int:
        return self.loops + sum(c.genus for c in self.components)

    def nodes_on(self, cid: str) -> list[tuple[Node, Endpoint]]:
        out = []
        for n in self.nodes:
            for e in (n.a, n.b):
                if e.component == cid:
                    out.append((n, e))
        return out

    def subgraph(self, ids: Iterable[str]) -> "CurveGraph":
        keep = set(ids)
        return CurveGraph(
            tuple(c for c in self.components if c.id in keep),
            tuple(n for n in self.nodes if n.a.component in keep and n.b.component in keep),
        )


@dataclass(frozen=True)
class BundleOnCurve:
    """Degrees of a line bundle per component, plus elliptic data.

    Elliptic components of nonzero degree default to a divisor in general
    position; degree 0 requires explicit data, since triviality is an input.
    """

    degrees: Mapping[str, int]
    elliptic: Mapping[str, EllipticBundleData] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "degrees", dict(self.degrees))
        object.__setattr__(self, "elliptic", dict(self.elliptic))
        for cid, data in self.elliptic.items():
            if data.degree != self.degrees.get(cid, 0):
                raise ValueError(f"elliptic data for {cid!r} has degree {data.degree}, bundle says {self.degrees.get(cid, 0)}")

    @property
    def total_degree(self) -> int:
        return sum(self.degrees.values())

    def degree(self, cid: str) -> int:
        return self.degrees.get(cid, 0)

    def elliptic_data(self, cid: str) -> EllipticBundleData:
        if cid in self.elliptic:
            return self.elliptic[cid]
        d = self.degree(cid)
        if d == 0:
            raise UnsupportedEvaluation(f"degree-0 bundle on elliptic component {cid!r} needs an explicit triviality flag")
        return EllipticBundleData(d)

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.degrees.items())), tuple(sorted(self.elliptic.items(), key=lambda kv: kv[0]))))


def _require_genus_one(graph: CurveGraph) -> None:
    if graph.arithmetic_genus != 1:
        raise ValueError(f"arithmetic genus is {graph.arithmetic_genus}, expected 1")


def core(graph: CurveGraph) -> frozenset[str]:
    """Smallest subcurve of arithmetic genus one."""
    _require_genus_one(graph)
    for c in graph.components:
        if c.genus == 1:
            return frozenset({c.id})
    # prune leaves until only the cycle is left
    alive = set(graph.ids)
    while True:
        deg: dict[str, int] = defaultdict(int)
        for n in graph.nodes:
            a, b = n.a.component, n.b.component
            if a in alive and b in alive:
                deg[a] += 1
                deg[b] += 1
        leaves = {c for c in alive if deg[c] <= 1}
        if not leaves:
            return frozenset(alive)
        alive -= leaves


def tails(graph: CurveGraph) -> list[frozenset[str]]:
    """Connected components of the curve with its core removed."""
    cset = core(graph)
    adj = graph.neighbours()
    rest = [c for c in graph.ids if c not in cset]
    out, seen = [], set()
    for start in rest:
        if start in seen:
            continue
        comp, stack = {start}, [start]
        seen.add(start)
        while stack:
            for w in adj[stack.pop()]:
                if w not in cset and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def euler_char(graph: CurveGraph, bundle: BundleOnCurve) -> int:
    return sum(bundle.degree(c.id) + 1 - c.genus for c in graph.components) - len(graph.nodes)


def _generic_values(graph: CurveGraph) -> dict[tuple[str, str], Fraction]:
    """Fresh prime coordinates for every named point, in a fixed order."""
    keys = sorted(
        {(e.component, e.label) for n in graph.nodes for e in (n.a, n.b)}
        - {(c, lab) for c in graph.ids for lab in (ZERO, INFINITY) if graph.component(c).genus == 0}
    )
    return {k: Fraction(p) for k, p in zip(keys, prime_sequence(len(keys)))}


def _evaluations(graph: CurveGraph, bundle: BundleOnCurve, cid: str, values) -> tuple[int, dict[str, list[Fraction]], int]:
    """Section-space dimension, evaluation vector per node, and h^1 of ``L|C``."""
    comp = graph.component(cid)
    d = bundle.degree(cid)
    here = graph.nodes_on(cid)
    ev: dict[tuple[str, str], list[Fraction]] = {}
    if comp.genus == 0:
        h0, h1 = h_p1(d)
        for node, e in here:
            if h0 == 0:
                vec = []
            elif e.label == ZERO:
                vec = [Fraction(1)] + [Fraction(0)] * d
            elif e.label == INFINITY:
                vec = [Fraction(0)] * d + [Fraction(1)]
            else:
                a = values[(cid, e.label)]
                vec = [a**i for i in range(d + 1)]
            ev[(node.name, e.label)] = vec
        return h0, ev, h1
    data = bundle.elliptic_data(cid)
    h0, h1 = h_elliptic(data)
    if data.divisor_nodes:
        if data.degree != 1:
            raise UnsupportedEvaluation(f"{cid!r}: a node in the divisor is only understood for O(q)")
        known = {n.name for n, _ in here}
        if not data.divisor_nodes <= known:
            raise UnsupportedEvaluation(f"{cid!r}: divisor node not on this component")
        for node, e in here:
            ev[(node.name, e.label)] = [Fraction(0 if node.name in data.divisor_nodes else 1)]
        return h0, ev, h1
    for node, e in here:
        if h0 == 0:
            vec = []
        elif data.degree == 0:
            vec = [Fraction(1)]
        else:
            a = values[(cid, e.label)]
            vec = [a**i for i in range(h0)]
        ev[(node.name, e.label)] = vec
    return h0, ev, h1


def gluing_matrix(graph: CurveGraph, bundle: BundleOnCurve) -> tuple[list[list[Fraction]], int, int]:
    """Node-evaluation matrix, number of columns, and ``sum h^1(L|C_i)``."""
    values = _generic_values(graph)
    offsets: dict[str, int] = {}
    evals = {}
    ncols, h1_sum = 0, 0
    for c in graph.components:
        h0, ev, h1 = _evaluations(graph, bundle, c.id, values)
        offsets[c.id] = ncols
        evals[c.id] = ev
        ncols += h0
        h1_sum += h1
    rows = []
    for node in graph.nodes:
        row = [Fraction(0)] * ncols
        for e, sign in ((node.a, 1), (node.b, -1)):
            off = offsets[e.component]
            for i, v in enumerate(evals[e.component][(node.name, e.label)]):
                row[off + i] += sign * v
        rows.append(row)
    return rows, ncols, h1_sum


def h0_h1(graph: CurveGraph, bundle: BundleOnCurve) -> tuple[int, int]:
    rows, ncols, h1_sum = gluing_matrix(graph, bundle)
    rank = matrix_rank(rows)
    return ncols - rank, len(graph.nodes) - rank + h1_sum
