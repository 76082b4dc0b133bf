"""Blowups of the base along coordinate subspaces and local freeness of ker(beta).

A chart of the blowup along ``(t_c1, ..., t_ck)`` is the monomial map
``t_cl -> s_l``, ``t_cj -> s_l * s_j``. The new coordinates reuse the old
names, so composing charts of successive blowups is just composing monomial
substitutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .exactalg import (
    DEFAULT_DEGREE_BOUND,
    Monomial,
    Polynomial,
    fiber_dim_of_submodule,
    generic_point,
    monomial_gcd,
    monomial_syzygies,
    origin,
)
from .family import FamilyConfig, beta_map

FREE = "FREE"
NOT_FREE = "NOT_FREE"


@dataclass(frozen=True)
class BlowupSpec:
    center: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(self.center))
        if not self.center:
            raise ValueError("blowup center must be nonempty")
        if len(set(self.center)) != len(self.center):
            raise ValueError(f"repeated parameter in center {self.center}")

    def check_against(self, universe: Iterable[str]) -> None:
        missing = set(self.center) - set(universe)
        if missing:
            raise ValueError(f"center parameters not in the base: {sorted(missing)}")


@dataclass(frozen=True)
class Chart:
    """Chart ``index`` of the blowup along ``center``."""

    center: tuple[str, ...]
    index: str

    @property
    def substitution(self) -> dict[str, Monomial]:
        s = Monomial.var(self.index)
        return {c: (s if c == self.index else s * Monomial.var(c)) for c in self.center}

    @property
    def exceptional(self) -> str:
        return self.index

    def __str__(self) -> str:
        return f"{self.index}@({','.join(self.center)})"


def charts(spec: BlowupSpec) -> list[Chart]:
    return [Chart(spec.center, c) for c in spec.center]


def substitute_row(row: Sequence[Monomial], substitution: dict[str, Monomial]) -> tuple[Monomial, ...]:
    return tuple(e.substitute(substitution) for e in row)


def pullback_beta(beta, chart: Chart) -> tuple[Monomial, ...]:
    entries = beta.entries if hasattr(beta, "entries") else tuple(beta)
    return substitute_row(entries, chart.substitution)


@dataclass(frozen=True)
class Freeness:
    verdict: str
    rank: Optional[int] = None
    origin_dim: Optional[int] = None
    generic_dim: Optional[int] = None

    @property
    def free(self) -> bool:
        return self.verdict == FREE

    def __str__(self) -> str:
        if self.free:
            return f"FREE({self.rank})"
        return f"NOT_FREE({self.origin_dim}, {self.generic_dim})"


def reduce_row(row: Sequence[Monomial]) -> tuple[Monomial, ...]:
    """Divide out the gcd; the kernel does not change."""
    g = monomial_gcd(row)
    return tuple(e / g for e in row)


def kernel_local_freeness(row: Sequence[Monomial], degree_bound: int = DEFAULT_DEGREE_BOUND) -> Freeness:
    """Decide whether the syzygy module of a monomial row is locally free.

    A unit entry after removing the gcd makes the kernel visibly free of rank
    ``len - 1``. Otherwise the minimal number of generators at the origin is
    compared with the one at a generic point.
    """
    if not row:
        raise ValueError("empty row")
    reduced = reduce_row(row)
    n = len(reduced)
    if any(e.is_one() for e in reduced):
        return Freeness(FREE, rank=n - 1)
    syz = monomial_syzygies(reduced)
    names = sorted(set().union(*(e.variables() for e in reduced)))
    at_origin = fiber_dim_of_submodule(syz, origin(names), degree_bound).value()
    at_generic = fiber_dim_of_submodule(syz, generic_point(names), degree_bound).value()
    if at_origin == at_generic:
        return Freeness(FREE, rank=at_generic)
    return Freeness(NOT_FREE, origin_dim=at_origin, generic_dim=at_generic)


@dataclass(frozen=True)
class ChartVerdict:
    path: tuple[Chart, ...]
    row: tuple[Monomial, ...]
    freeness: Freeness

    @property
    def label(self) -> str:
        return " > ".join(map(str, self.path)) or "base"


@dataclass(frozen=True)
class ResolveReport:
    charts: tuple[ChartVerdict, ...]

    @property
    def resolved(self) -> bool:
        return all(c.freeness.free for c in self.charts)

    def witness(self) -> Optional[ChartVerdict]:
        for c in self.charts:
            if not c.freeness.free:
                return c
        return None


def resolve_check(
    config: FamilyConfig,
    m: Optional[Sequence[int]] = None,
    specs: Sequence[BlowupSpec] = (),
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> ResolveReport:
    """Pull ``beta`` back through a sequence of blowups and test every leaf chart.

    Each blowup is applied in every chart produced by the previous ones;
    centers are named in the coordinates of that chart, which keep the
    original parameter names.
    """
    cfg, _ = config.with_m(m).normalized()
    universe = cfg.parameters()
    for spec in specs:
        spec.check_against(universe)
    row = beta_map(cfg).entries
    leaves: list[tuple[tuple[Chart, ...], tuple[Monomial, ...]]] = [((), row)]
    for spec in specs:
        leaves = [(path + (ch,), pullback_beta(r, ch)) for path, r in leaves for ch in charts(spec)]
    out = [ChartVerdict(path, r, kernel_local_freeness(r, degree_bound)) for path, r in leaves]
    return ResolveReport(tuple(out))


def deepest_stratum_blowup(config: FamilyConfig) -> BlowupSpec:
    """Blowup at the point where every tail parameter vanishes."""
    return BlowupSpec(tuple(t.param for t in config.tails))


def chart_map_values(chart: Chart, values: dict) -> dict:
    """Images of chart coordinates ``values`` under the blowdown map."""
    out = dict(values)
    for name, mono in chart.substitution.items():
        out[name] = Polynomial.from_monomial(mono).evaluate(values)
    return out
