"""Families of nodal genus-one curves and the direct image of ``O(mS)``.

A family is described by its tails: tail ``i`` carries a section ``S_i`` of
multiplicity ``m_i``, a smoothing parameter ``t_i`` and the chain of ghost
node parameters ``t_ij`` through which it hangs off the core. The direct
image with the auxiliary section ``D`` added splits as a sum of twists, and

    pi_* O(mS) = V_m0 (+) ker(beta),   beta = (t_i * prod_j t_ij)_i,

so every fiber rank question reduces to the syzygy module of a monomial row.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Iterable, Iterator, Optional, Sequence

from .cohomology import EllipticBundleData, MultiDegree, splitting_obstruction
from .exactalg import (
    DEFAULT_DEGREE_BOUND,
    GenericityError,
    Monomial,
    PointAssignment,
    Polynomial,
    fiber_dim_of_submodule,
    generic_point,
    monomial_kernel_fiber_dim,
    monomial_syzygies,
)
from .nodalcurve import ZERO, BundleOnCurve, Component, CurveGraph, Endpoint, Node, h0_h1

log = logging.getLogger(__name__)

LOCAL = "local"
MULTIPROJECTIVE = "multiprojective"
CORE = "core"


@dataclass(frozen=True)
class TailSpec:
    name: str
    m: int = 1
    param: str = ""
    chain: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(self.chain))
        if not self.param:
            object.__setattr__(self, "param", f"t{self.name}")
        if self.m < 0:
            raise ValueError(f"tail {self.name!r}: negative multiplicity {self.m}")
        if len(set(self.chain)) != len(self.chain):
            raise ValueError(f"tail {self.name!r}: repeated ghost in chain {self.chain}")


@dataclass(frozen=True)
class FamilyConfig:
    tails: tuple[TailSpec, ...]
    base_mode: str = LOCAL
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "tails", tuple(self.tails))
        if self.base_mode not in (LOCAL, MULTIPROJECTIVE):
            raise ValueError(f"unknown base mode {self.base_mode!r}")
        names = [t.name for t in self.tails]
        if len(set(names)) != len(names) or CORE in names:
            raise ValueError("tail names must be distinct and not 'core'")
        params = [t.param for t in self.tails]
        if len(set(params)) != len(params):
            raise ValueError("tail smoothing parameters must be pairwise distinct")
        ghosts = set(chain.from_iterable(t.chain for t in self.tails))
        clash = ghosts & set(params)
        if clash:
            raise ValueError(f"parameters used both as tail and ghost: {sorted(clash)}")
        clash = ghosts & (set(names) | {CORE})
        if clash:
            raise ValueError(f"ghost names clash with component names: {sorted(clash)}")
        # a shared ghost must hang off the same ancestors in every chain
        prefix: dict[str, tuple[str, ...]] = {}
        for t in self.tails:
            for k, g in enumerate(t.chain):
                if prefix.setdefault(g, t.chain[:k]) != t.chain[:k]:
                    raise ValueError(f"ghost {g!r} has inconsistent ancestors {prefix[g]} vs {t.chain[:k]}")

    @classmethod
    def rtail(cls, m: Sequence[int], base_mode: str = MULTIPROJECTIVE, name: str = "") -> "FamilyConfig":
        """Elliptic core with ``len(m)`` tails and no ghost chains."""
        return cls(tuple(TailSpec(str(i + 1), mi) for i, mi in enumerate(m)), base_mode, name or f"rtail{len(m)}")

    @property
    def r(self) -> int:
        return len(self.tails)

    @property
    def m(self) -> tuple[int, ...]:
        return tuple(t.m for t in self.tails)

    def parameters(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys([t.param for t in self.tails] + [g for t in self.tails for g in t.chain]))

    def tail(self, name: str) -> TailSpec:
        for t in self.tails:
            if t.name == name:
                return t
        raise KeyError(f"no tail {name!r}")

    def with_m(self, m: Optional[Sequence[int]]) -> "FamilyConfig":
        if m is None:
            return self
        m = tuple(m)
        if len(m) != self.r:
            raise ValueError(f"expected {self.r} multiplicities, got {len(m)}")
        return FamilyConfig(
            tuple(TailSpec(t.name, mi, t.param, t.chain) for t, mi in zip(self.tails, m)), self.base_mode, self.name
        )

    def normalized(self) -> tuple["FamilyConfig", tuple[str, ...]]:
        """Drop tails of multiplicity zero; they do not affect the sheaf."""
        dropped = tuple(t.name for t in self.tails if t.m == 0)
        kept = tuple(t for t in self.tails if t.m > 0)
        if dropped:
            log.info("normalized away zero-multiplicity tails %s", ", ".join(dropped))
        return FamilyConfig(kept, self.base_mode, self.name), dropped


@dataclass(frozen=True)
class Twist:
    """The line bundle ``O(sum c_x V_x)`` with ``V_x = {x = 0}``."""

    coeffs: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(sorted((n, c) for n, c in dict(self.coeffs).items() if c)))

    @classmethod
    def of(cls, **coeffs: int) -> "Twist":
        return cls(tuple(coeffs.items()))

    def __add__(self, other: "Twist") -> "Twist":
        acc = dict(self.coeffs)
        for n, c in other.coeffs:
            acc[n] = acc.get(n, 0) + c
        return Twist(tuple(acc.items()))

    def __mul__(self, k: int) -> "Twist":
        return Twist(tuple((n, k * c) for n, c in self.coeffs))

    __rmul__ = __mul__

    def __neg__(self) -> "Twist":
        return self * -1

    def multidegree(self, universe: Sequence[str]) -> MultiDegree:
        """Multidegree on ``(P^1)^universe``; ``V_x`` is the point class of slot ``x``."""
        d = dict(self.coeffs)
        unknown = set(d) - set(universe)
        if unknown:
            raise ValueError(f"twist involves parameters outside the base: {sorted(unknown)}")
        return MultiDegree(tuple(d.get(n, 0) for n in universe))

    def principal_monomial(self) -> Monomial:
        """Generator of ``O(-sum c V)`` as an ideal sheaf on an affine chart (for ``c <= 0``)."""
        if any(c > 0 for _, c in self.coeffs):
            raise ValueError("only anti-effective twists are principal ideals")
        return Monomial({n: -c for n, c in self.coeffs})

    def __str__(self) -> str:
        if not self.coeffs:
            return "O"
        parts = []
        for i, (n, c) in enumerate(self.coeffs):
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else ("+" if i else "")
            parts.append(f"{sign}{mag}V_{n}")
        return "O(" + "".join(parts) + ")"


@dataclass(frozen=True)
class BetaMap:
    """The row ``(t_i * prod_j t_ij)`` over the tails."""

    tails: tuple[str, ...]
    entries: tuple[Monomial, ...]

    def row(self) -> tuple[Polynomial, ...]:
        return tuple(Polynomial.from_monomial(e) for e in self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.entries)) + ")"


def normal_bundle_of_section(config: FamilyConfig, tail: str) -> Twist:
    """Direct image of the normal bundle of ``S_i``: ``O(-V_i - sum_j V_ij)``."""
    t = config.tail(tail)
    return -Twist(tuple((p, 1) for p in (t.param,) + t.chain))


def beta_map(config: FamilyConfig) -> BetaMap:
    entries = []
    for t in config.tails:
        entries.append(Monomial({p: 1 for p in (t.param,) + t.chain}))
    return BetaMap(tuple(t.name for t in config.tails), tuple(entries))


def _check_m(config: FamilyConfig, m: Optional[Sequence[int]]) -> FamilyConfig:
    cfg = config.with_m(m)
    for t in cfg.tails:
        if t.m < 0:
            raise ValueError(f"tail {t.name!r}: negative multiplicity")
    return cfg


def pushforward_with_D(config: FamilyConfig, m: Optional[Sequence[int]] = None) -> list[Twist]:
    """Free summands of ``pi_* O(mS + D)``: ``O`` and ``k * N_i`` for ``1 <= k <= m_i``.

    Zero multiplicities contribute nothing, so this also covers the start of
    the induction on ``sum m_i``.
    """
    cfg = _check_m(config, m)
    out = [Twist()]
    for t in cfg.tails:
        n = normal_bundle_of_section(cfg, t.name)
        out.extend(k * n for k in range(1, t.m + 1))
    return out


@dataclass(frozen=True)
class PushforwardModel:
    """``pi_* O(mS) = V_m0 (+) ker(beta)`` inside ``V_m0 (+) V1``."""

    config: FamilyConfig
    V_m0: tuple[Twist, ...]
    V1: tuple[Twist, ...]
    beta: BetaMap
    kernel_generators: tuple[tuple[Polynomial, ...], ...]
    dropped: tuple[str, ...] = field(default=(), compare=False)

    @property
    def rank_with_D(self) -> int:
        return len(self.V_m0) + len(self.V1)

    @property
    def generic_rank(self) -> int:
        return len(self.V_m0) + max(len(self.V1) - 1, 0)

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.config.parameters()

    def beta_m_row(self) -> tuple[Polynomial, ...]:
        """``beta_m`` on ``V_m0 (+) V1``: zero on ``V_m0``, ``beta`` on ``V1``."""
        return tuple(Polynomial() for _ in self.V_m0) + self.beta.row()


def pushforward(config: FamilyConfig, m: Optional[Sequence[int]] = None) -> PushforwardModel:
    cfg, dropped = _check_m(config, m).normalized()
    if not cfg.tails:
        raise ValueError("at least one tail needs positive multiplicity")
    V_m0 = [Twist()]
    V1 = []
    for t in cfg.tails:
        n = normal_bundle_of_section(cfg, t.name)
        V1.append(n)
        V_m0.extend(k * n for k in range(2, t.m + 1))
    beta = beta_map(cfg)
    kernel = tuple(monomial_syzygies(beta.entries)) if len(beta.entries) > 1 else ()
    return PushforwardModel(cfg, tuple(V_m0), tuple(V1), beta, kernel, dropped)


def kernel_fiber_dim(model: PushforwardModel, point: PointAssignment, degree_bound: int = DEFAULT_DEGREE_BOUND) -> int:
    if not model.kernel_generators:
        return 0
    return fiber_dim_of_submodule(model.kernel_generators, point.restrict(model.parameters), degree_bound).value()


def fiber_rank(model: PushforwardModel, point: PointAssignment, degree_bound: int = DEFAULT_DEGREE_BOUND) -> int:
    """``dim (pi_* O(mS)) (x) k(point)``."""
    return len(model.V_m0) + kernel_fiber_dim(model, point, degree_bound)


@dataclass(frozen=True)
class R1Model:
    """``R^1 pi_* O(mS) = O_V / (entries of beta)``."""

    ideal: tuple[Monomial, ...]
    support: tuple[frozenset[str], ...]
    tail_stratum: frozenset[str]
    reduced: bool

    def __str__(self) -> str:
        comps = " u ".join("{" + ", ".join(f"{n}=0" for n in sorted(c)) + "}" for c in self.support)
        return f"O/({', '.join(map(str, self.ideal))}) supported on {comps}"


def minimal_primes(entries: Sequence[Monomial]) -> tuple[frozenset[str], ...]:
    """Coordinate subspaces forming the zero locus of a monomial ideal."""
    names = sorted(set().union(*(e.variables() for e in entries)))
    covers: list[frozenset[str]] = []
    for k in range(len(names) + 1):
        for s in combinations(names, k):
            fs = frozenset(s)
            if any(c <= fs for c in covers):
                continue
            if all(e.variables() & fs for e in entries):
                covers.append(fs)
    return tuple(covers)


def r1_model(config: FamilyConfig, m: Optional[Sequence[int]] = None) -> R1Model:
    model = pushforward(config, m)
    entries = model.beta.entries
    reduced = all(e == Monomial({n: 1 for n in e.variables()}) for e in entries)
    return R1Model(
        entries,
        minimal_primes(entries),
        frozenset(t.param for t in model.config.tails),
        reduced,
    )


def splitting_instances(config: FamilyConfig, max_m: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Every inductive step ``m -> m + e_j`` with all multiplicities ``<= max_m``."""
    r = config.r

    def vectors(k):
        if k == 0:
            yield ()
            return
        for rest in vectors(k - 1):
            for a in range(max_m + 1):
                yield rest + (a,)

    for m in vectors(r):
        for j in range(r):
            if m[j] + 1 <= max_m:
                yield m, j


def splitting_certificate(config: FamilyConfig, m: Sequence[int], j: int) -> int:
    """Ext^1 of the new quotient ``(m_j+1) N_j`` by ``pi_* O(mS + D)``.

    On an affine base Ext^1 between vector bundles vanishes, so the local mode
    certificate is 0 by definition; in multiprojective mode it is computed by
    Kunneth.
    """
    cfg = _check_m(config, m)
    if cfg.base_mode == LOCAL:
        return 0
    universe = cfg.parameters()
    t = cfg.tails[j]
    quotient = ((t.m + 1) * normal_bundle_of_section(cfg, t.name)).multidegree(universe)
    subs = [tw.multidegree(universe) for tw in pushforward_with_D(cfg)]
    return splitting_obstruction(quotient, subs)


# --- fibers of the family ---------------------------------------------------


def strata(config: FamilyConfig) -> list[frozenset[str]]:
    """All coordinate strata, from the generic one to the deepest."""
    params = config.parameters()
    return [frozenset(s) for k in range(len(params) + 1) for s in combinations(params, k)]


def fiber_curve(config: FamilyConfig, stratum: Iterable[str]) -> tuple[CurveGraph, BundleOnCurve]:
    """Dual graph of the fiber over a generic point of ``stratum`` and the bundle ``O(mS)`` on it.

    A tail component exists iff its ``t_i`` vanishes, a ghost component iff
    its ``t_ij`` vanishes; a smoothed component merges into its nearest
    surviving ancestor, which then carries its sections.
    """
    zero = frozenset(stratum)
    unknown = zero - set(config.parameters())
    if unknown:
        raise ValueError(f"unrecognized stratum: {sorted(unknown)} are not base parameters")
    parent: dict[str, str] = {}
    present = [CORE]
    degrees: dict[str, int] = {CORE: 0}
    for t in config.tails:
        anchor = CORE
        for g in t.chain:
            if g in zero:
                if g not in parent:
                    parent[g] = anchor
                    present.append(g)
                    degrees[g] = 0
                anchor = g
        if t.param in zero:
            parent[t.name] = anchor
            present.append(t.name)
            degrees[t.name] = t.m
        else:
            degrees[anchor] += t.m
    comps = [Component(CORE, 1)] + [Component(c, 0) for c in present[1:]]
    nodes = []
    for child in present[1:]:
        par = parent[child]
        nodes.append(Node(f"n_{child}", Endpoint(child, ZERO), Endpoint(par, f"q_{child}")))
    graph = CurveGraph(tuple(comps), tuple(nodes))
    d_core = degrees[CORE]
    bundle = BundleOnCurve(degrees, {CORE: EllipticBundleData(d_core, trivial=(d_core == 0))})
    return graph, bundle


@dataclass(frozen=True)
class BaseChangeReport:
    stratum: frozenset[str]
    module_fiber: int
    h0: int
    h1: int
    generic_rank: int
    verdict: str

    @property
    def chi(self) -> int:
        return self.h0 - self.h1


EQUAL = "EQUAL"
JUMP = "JUMP"
MISMATCH = "MISMATCH"
SEMICONTINUITY_FAILURE = "SEMICONTINUITY_FAILURE"


def generic_fiber_rank(model: PushforwardModel, stratum: Iterable[str] = (), degree_bound: int = DEFAULT_DEGREE_BOUND) -> int:
    """Fiber rank at a generic point of ``stratum``, checked on two prime sequences."""
    stratum = tuple(stratum)
    a = fiber_rank(model, generic_point(model.parameters, stratum, 0), degree_bound)
    b = fiber_rank(model, generic_point(model.parameters, stratum, 1), degree_bound)
    if a != b:
        raise GenericityError(f"fiber rank on stratum {sorted(stratum)}: {a} vs {b} on the two prime sequences")
    return a


def stratum_fiber_rank(model: PushforwardModel, stratum: Iterable[str] = (), degree_bound: int = DEFAULT_DEGREE_BOUND) -> int:
    """Same as :func:`generic_fiber_rank`, by inverting the parameters that do not vanish.

    Much cheaper, and cached on the localized row, so sweeps over strata and
    multiplicities reuse most of the work.
    """
    if not model.kernel_generators:
        return len(model.V_m0)
    return len(model.V_m0) + monomial_kernel_fiber_dim(model.beta.entries, stratum, degree_bound)


def base_change_check(
    config: FamilyConfig,
    m: Optional[Sequence[int]] = None,
    stratum: Iterable[str] = (),
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> BaseChangeReport:
    """Compare the module fiber with ``h^0`` of the fiber curve on a stratum.

    Equality is demanded where ``h^1 = 0``; elsewhere the report only records
    both numbers and checks upper semicontinuity against the generic rank.
    """
    cfg, _ = _check_m(config, m).normalized()
    stratum = frozenset(stratum)
    unknown = stratum - set(config.parameters())
    if unknown:
        raise ValueError(f"unrecognized stratum: {sorted(unknown)} are not base parameters")
    graph, bundle = fiber_curve(cfg, stratum & set(cfg.parameters()))
    model = pushforward(cfg)
    module_fiber = stratum_fiber_rank(model, stratum, degree_bound)
    generic = stratum_fiber_rank(model, (), degree_bound)
    h0, h1 = h0_h1(graph, bundle)
    if h1 == 0:
        verdict = EQUAL if module_fiber == h0 else MISMATCH
    else:
        verdict = JUMP if module_fiber >= generic else SEMICONTINUITY_FAILURE
    return BaseChangeReport(stratum, module_fiber, h0, h1, generic, verdict)


def stratum_table(
    config: FamilyConfig, m: Optional[Sequence[int]] = None, degree_bound: int = DEFAULT_DEGREE_BOUND
) -> list[BaseChangeReport]:
    cfg = _check_m(config, m)
    return [base_change_check(cfg, None, s, degree_bound) for s in strata(cfg)]
