"""Extending sections of ``O(mS)`` from the central fiber to its thickenings.

The central fiber ``Z_0 = C u C_a`` is an elliptic curve ``C`` meeting a
rational curve ``C_a`` (coordinates ``[u0, u1]``, node at ``u1 = 0``) in one
point. The level-``k`` thickening is ``W_k = (k+1)C + kC_a``. A section on
``C_a`` extends to ``W_1`` iff it is matched, in the gluing ring
``k[u1]/(u1^2)``, by a first-order section on the ``C`` side. Higher levels
are controlled by ``h^1`` of ``O(mS - C)`` restricted to ``Z_0``.

The elliptic side is modelled by its evaluations into the gluing ring only:
without twist it offers a constant ``a`` (evaluating to 1) and the normal
direction ``t`` (evaluating to 0); with the ``D0 - D1`` twist it offers one
section ``s`` evaluating to ``u1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .cohomology import EllipticBundleData
from .exactalg import Monomial, kernel_basis, matrix_rank
from .nodalcurve import ZERO, BundleOnCurve, Component, CurveGraph, Endpoint, Node, h0_h1

NONE = "none"
D0_MINUS_D1 = "d0-d1"
TWISTS = (NONE, D0_MINUS_D1)

EXTENDS = "extends"
OBSTRUCTED = "obstructed"
UNDECIDED = "undecided"


def _check(m: int, twist: str) -> None:
    if m < 1:
        raise ValueError(f"multiplicity must be >= 1, got {m}")
    if twist not in TWISTS:
        raise ValueError(f"unknown twist {twist!r}; expected one of {TWISTS}")


def rational_monomial(m: int, i: int) -> Monomial:
    return Monomial({"u0": m - i, "u1": i})


@dataclass(frozen=True)
class LabeledBasis:
    labels: tuple[str, ...]
    # exponent of u1 for each rational generator
    u1_orders: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.labels)


def central_sections(m: int, twist: str = NONE) -> LabeledBasis:
    """Sections on ``C_a`` that occur in ``H^0(Z_0)``.

    Without twist every degree-``m`` monomial does (its value at the node fixes
    the constant on ``C``). With the twist the elliptic piece has no sections,
    so only the monomials vanishing at the node survive.
    """
    _check(m, twist)
    start = 0 if twist == NONE else 1
    idx = tuple(range(start, m + 1))
    return LabeledBasis(tuple(str(rational_monomial(m, i)) for i in idx), idx)


def elliptic_first_order(twist: str) -> tuple[tuple[str, ...], tuple[tuple[Fraction, Fraction], ...]]:
    """Labels and ``(1, u1)``-coefficients of the elliptic-side generators."""
    if twist == NONE:
        return ("a", "t"), ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0)))
    return ("s",), ((Fraction(0), Fraction(1)),)


@dataclass(frozen=True)
class FiberProduct:
    """Solutions of ``phi_C(w1) = phi_Ca(w2)`` in ``k[u1]/(u1^2)``."""

    columns: tuple[str, ...]
    rational: tuple[str, ...]
    equations: tuple[tuple[Fraction, ...], ...]
    kernel: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.kernel)


def fiber_product(m: int, twist: str = NONE) -> FiberProduct:
    _check(m, twist)
    basis = central_sections(m, twist)
    ell_labels, ell_vals = elliptic_first_order(twist)
    columns = basis.labels + ell_labels
    eqs = []
    for order in (0, 1):
        row = [Fraction(int(i == order)) for i in basis.u1_orders]
        row += [-v[order] for v in ell_vals]
        eqs.append(tuple(row))
    ker = kernel_basis([list(r) for r in eqs], len(columns))
    return FiberProduct(columns, basis.labels, tuple(eqs), tuple(tuple(v) for v in ker))


@dataclass(frozen=True)
class LevelOneResult:
    basis: LabeledBasis
    status: dict
    projection_rank: int
    fiber_product_dim: int

    @property
    def extendable(self) -> tuple[str, ...]:
        return tuple(l for l in self.basis.labels if self.status[l] == EXTENDS)

    @property
    def obstructed(self) -> tuple[str, ...]:
        return tuple(l for l in self.basis.labels if self.status[l] == OBSTRUCTED)

    @property
    def codimension(self) -> int:
        return self.basis.dim - self.projection_rank


def extend_once(m: int, twist: str = NONE) -> LevelOneResult:
    """Which central sections lift to ``W_1``.

    The extendable subspace is the image of the fiber product in the
    ``C_a`` coordinates; a basis monomial extends iff it lies in it.
    """
    fp = fiber_product(m, twist)
    basis = central_sections(m, twist)
    n = basis.dim
    proj = [list(v[:n]) for v in fp.kernel]
    rank = matrix_rank(proj) if proj else 0
    status = {}
    for k, label in enumerate(basis.labels):
        unit = [Fraction(int(j == k)) for j in range(n)]
        inside = proj and matrix_rank(proj + [unit]) == rank
        status[label] = EXTENDS if inside else OBSTRUCTED
    n_ext = sum(1 for s in status.values() if s == EXTENDS)
    if n_ext != rank:
        raise ArithmeticError("extendable subspace is not spanned by basis monomials")
    return LevelOneResult(basis, status, rank, fp.dim)


def restricted_twist(m: int, twist: str, rational_degree: Optional[int] = None) -> tuple[CurveGraph, BundleOnCurve]:
    """``Z_0`` with the bundle ``O(mS - C)|Z_0`` that governs higher obstructions.

    On ``C`` it is ``O_C(q)`` with ``q`` the node (times ``O(q0 - q1)`` under
    the twist, a degree-one bundle in general position); on ``C_a`` it has
    degree ``m - 1`` unless overridden.
    """
    _check(m, twist)
    deg_a = m - 1 if rational_degree is None else rational_degree
    graph = CurveGraph(
        (Component("C", 1), Component("Ca", 0)),
        (Node("q", Endpoint("Ca", ZERO), Endpoint("C", "q")),),
    )
    if twist == NONE:
        ell = EllipticBundleData(1, divisor_nodes=frozenset({"q"}))
    else:
        ell = EllipticBundleData(1)
    return graph, BundleOnCurve({"C": 1, "Ca": deg_a}, {"C": ell})


def obstruction_space(m: int, twist: str = NONE, k: int = 1, rational_degree: Optional[int] = None) -> int:
    """``h^1(O(mS - W_k)|Z_0)``; the restriction does not depend on ``k``."""
    if k < 1:
        raise ValueError("level must be >= 1")
    return h0_h1(*restricted_twist(m, twist, rational_degree))[1]


def graded_piece(m: int, twist: str = NONE) -> int:
    """``h^0(O(mS - C)|Z_0)``, the growth of ``H^0`` from one level to the next."""
    return h0_h1(*restricted_twist(m, twist))[0]


@dataclass(frozen=True)
class LevelReport:
    level: int
    obstruction: int
    h0: int
    status: dict


@dataclass(frozen=True)
class ExtensionReport:
    m: int
    twist: str
    basis: LabeledBasis
    levels: tuple[LevelReport, ...]

    def extends_through(self, label: str) -> int:
        """Highest level through which ``label`` is known to extend (0 if none)."""
        top = 0
        for lv in self.levels:
            if lv.status[label] != EXTENDS:
                break
            top = lv.level
        return top

    @property
    def surviving(self) -> tuple[str, ...]:
        last = self.levels[-1].status
        return tuple(l for l in self.basis.labels if last[l] == EXTENDS)


def extend_all(m: int, twist: str = NONE, k_max: int = 5) -> ExtensionReport:
    """Level-by-level extension table up to ``W_{k_max}``.

    Level 1 comes from the fiber product. A section that reached level
    ``k`` reaches ``k + 1`` when the obstruction group vanishes; otherwise its
    status becomes undecided. ``u0^m`` is the tautological section vanishing
    to order ``m`` along ``S`` and extends to every order regardless.
    """
    _check(m, twist)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    first = extend_once(m, twist)
    h0 = first.fiber_product_dim
    step = graded_piece(m, twist)
    status = dict(first.status)
    levels = [LevelReport(1, obstruction_space(m, twist, 1), h0, dict(status))]
    tautological = str(rational_monomial(m, 0))
    for k in range(2, k_max + 1):
        obs = obstruction_space(m, twist, k)
        h0 += step
        if obs:
            status = {l: (UNDECIDED if s == EXTENDS else s) for l, s in status.items()}
        if tautological in status:
            status[tautological] = EXTENDS
        levels.append(LevelReport(k, obs, h0, dict(status)))
    return ExtensionReport(m, twist, first.basis, tuple(levels))


# --- trivializations and cocycles ------------------------------------------


@dataclass(frozen=True)
class Trivialization:
    """Charts with Laurent-monomial coordinate changes and bundle transitions.

    ``coordinate_maps[(i, j)]`` gives each coordinate of chart ``j`` as a
    Laurent monomial in those of chart ``i``; ``bundle_maps[(i, j)] = g_ij``
    with ``eta_j = g_ij * eta_i`` in the coordinates of chart ``i``.
    """

    charts: dict
    coordinate_maps: dict
    bundle_maps: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CocycleResult:
    ok: bool
    failure: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _compose(first: dict, second: dict) -> dict:
    return {name: mono.substitute(first) for name, mono in second.items()}


def check_cocycle(triv: Trivialization) -> CocycleResult:
    """Check every triple of charts ``i < j < k`` with all transitions given.

    Both the coordinate changes (``i -> j -> k`` against ``i -> k``) and the
    bundle transitions (``g_ik = g_jk * g_ij``) must agree as Laurent
    monomials.
    """
    for (i, j), cmap in triv.coordinate_maps.items():
        if set(cmap) != set(triv.charts[j]):
            return CocycleResult(False, f"map {i}->{j} does not give every coordinate of chart {j}")
        for name, mono in cmap.items():
            if not mono.variables() <= set(triv.charts[i]):
                return CocycleResult(False, f"map {i}->{j}: {name} = {mono} uses coordinates outside chart {i}")
    names = sorted(triv.charts)
    for i, j, k in combinations(names, 3):
        maps = triv.coordinate_maps
        if not all(p in maps for p in ((i, j), (j, k), (i, k))):
            continue
        via = _compose(maps[(i, j)], maps[(j, k)])
        for name in sorted(via):
            if via[name] != maps[(i, k)][name]:
                return CocycleResult(
                    False, f"coordinate {name}: {i}->{j}->{k} gives {via[name]}, {i}->{k} gives {maps[(i, k)][name]}"
                )
        g = triv.bundle_maps
        if all(p in g for p in ((i, j), (j, k), (i, k))):
            prod = g[(j, k)].substitute(maps[(i, j)]) * g[(i, j)]
            if prod != g[(i, k)]:
                return CocycleResult(False, f"g_{i}{k} = {g[(i, k)]} but g_{j}{k} * g_{i}{j} = {prod}")
    return CocycleResult(True)


def _lm(**exps: int) -> Monomial:
    return Monomial(exps, laurent=True)


def blowup_trivialization(m: int, literal_transition: bool = False) -> Trivialization:
    """Trivialization of ``O(mS)`` near the exceptional curve, on ``u0 z = u1 t``.

    Charts: ``V0 = {u1 = 1}`` with ``(u0, z)``, ``V1 = {u0 = 1}`` with
    ``(u1, t)``, ``V2`` away from the exceptional curve with ``(z, t)``. The
    relation forces ``t = u0 z`` on ``V0``; ``literal_transition`` uses
    ``t = u0^2 z`` instead, which is inconsistent and must be rejected.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    t_exp = 2 if literal_transition else 1
    charts = {"V0": ("u0", "z"), "V1": ("u1", "t"), "V2": ("z", "t")}
    coords = {
        ("V0", "V1"): {"u1": _lm(u0=-1), "t": _lm(u0=t_exp, z=1)},
        ("V0", "V2"): {"z": _lm(z=1), "t": _lm(u0=1, z=1)},
        ("V1", "V2"): {"z": _lm(u1=1, t=1), "t": _lm(t=1)},
    }
    # u0^m eta_1 = eta_0 u1^m, read in V0 where u1 = 1
    bundle = {
        ("V0", "V1"): _lm(u0=-m),
        ("V1", "V2"): _lm(),
        ("V0", "V2"): _lm(u0=-m),
    }
    return Trivialization(charts, coords, bundle)


def exponent_mutations(triv: Trivialization):
    """Every trivialization obtained by raising one exponent of one map by 1.

    The exponent may belong to any coordinate of the source chart, so
    coordinates absent from a monomial are mutated too.
    """
    for key, cmap in triv.coordinate_maps.items():
        for name in sorted(cmap):
            for var in triv.charts[key[0]]:
                new = dict(cmap)
                new[name] = cmap[name] * _lm(**{var: 1})
                coords = dict(triv.coordinate_maps)
                coords[key] = new
                yield f"coordinate {name} of {key[0]}->{key[1]}, +1 on {var}", replace(triv, coordinate_maps=coords)
    for key, g in triv.bundle_maps.items():
        for var in triv.charts[key[0]]:
            bundle = dict(triv.bundle_maps)
            bundle[key] = g * _lm(**{var: 1})
            yield f"g_{key[0]}{key[1]}, +1 on {var}", replace(triv, bundle_maps=bundle)
