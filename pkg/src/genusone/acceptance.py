"""Acceptance checks, shared by the test suite and ``genusone selftest``.

Each check returns a :class:`CriterionResult`; a failing check reports the
first counterexample instead of raising.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Callable

from .blowup import deepest_stratum_blowup, kernel_local_freeness, resolve_check
from .cohomology import EllipticBundleData, MultiDegree, euler_characteristic, ext1, h_multi
from .exactalg import Monomial, monomial_syzygies, syzygy_span_dims, truncated_kernel_dim
from .extension import (
    D0_MINUS_D1,
    EXTENDS,
    NONE,
    blowup_trivialization,
    check_cocycle,
    extend_all,
    exponent_mutations,
    obstruction_space,
    rational_monomial,
)
from .family import (
    EQUAL,
    MULTIPROJECTIVE,
    FamilyConfig,
    TailSpec,
    beta_map,
    pushforward,
    pushforward_with_D,
    r1_model,
    splitting_certificate,
    splitting_instances,
    stratum_fiber_rank,
    stratum_table,
)
from .nodalcurve import INFINITY, ZERO, BundleOnCurve, Component, CurveGraph, Endpoint, Node, euler_char, h0_h1


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number}. {self.title}: {self.detail} ({self.seconds:.2f}s)"


def _first_failure(checks) -> tuple[int, str | None]:
    n = 0
    for ok, what in checks:
        n += 1
        if not ok:
            return n, what
    return n, None


# --- 1 ----------------------------------------------------------------------


def one_tail_direct_image() -> tuple[bool, str]:
    """One tail, ``m = 1..6``: summands ``O, O(-2), ..., O(-m)``, ``R^1 = k(p)``."""

    def checks():
        for m in range(1, 7):
            cfg = FamilyConfig.rtail([m])
            model = pushforward(cfg)
            degs = sorted((t.multidegree(cfg.parameters()).degrees[0] for t in model.V_m0), reverse=True)
            want = [0] + list(range(-2, -m - 1, -1))
            yield degs == want, f"m={m}: summands {degs}, expected {want}"
            yield not model.kernel_generators, f"m={m}: ker(beta) should vanish"
            row = model.beta_m_row()
            support = [k for k, p in enumerate(row) if not p.is_zero()]
            v1 = [t.multidegree(cfg.parameters()).degrees[0] for t in model.V1]
            yield support == [len(model.V_m0)] and v1 == [-1], f"m={m}: beta not supported on the O(-1) slot"
            r1 = r1_model(cfg)
            yield r1.support == (frozenset({"t1"}),) and r1.reduced, f"m={m}: R^1 is {r1}"

    n, bad = _first_failure(checks())
    return bad is None, bad or f"{n} facts for m=1..6"


# --- 2 ----------------------------------------------------------------------


def splitting_certificates() -> tuple[bool, str]:
    """``Ext^1`` of each inductive quotient by ``pi_* O(mS + D)`` vanishes, ``r <= 4``, ``m_i <= 3``."""
    total, nonzero, first = 0, 0, None
    for r in range(1, 5):
        cfg = FamilyConfig.rtail([0] * r, MULTIPROJECTIVE)
        for m, j in splitting_instances(cfg, 3):
            total += 1
            obs = splitting_certificate(cfg, m, j)
            if obs:
                nonzero += 1
                if first is None:
                    first = f"r={r} m={m} step on tail {j + 1}: Ext^1 = {obs}"
    witness = ext1(MultiDegree.of(0), MultiDegree.of(-2))
    ok = nonzero == 0 and witness == 1
    detail = f"{total} instances, {nonzero} with nonzero Ext^1; non-split witness Ext^1(O, O(-2)) = {witness}"
    if first:
        detail += f"; first: {first}"
    return ok, detail


# --- 3 ----------------------------------------------------------------------


def chained_configs() -> list[FamilyConfig]:
    """Small configurations with ghost chains of length at most 2."""
    T = TailSpec
    return [
        FamilyConfig((T("b", 1, chain=("ta",)), T("c", 1, chain=("ta",))), name="o[a[b,c]]"),
        FamilyConfig((T("b", 1, chain=("ta", "tg")),), name="chain2"),
        FamilyConfig((T("b", 1, chain=("ta", "tg")), T("c", 1, chain=("ta",))), name="chain2+1"),
        FamilyConfig((T("b", 1, chain=("ta",)), T("c", 1, chain=("tg",))), name="two ghosts"),
        FamilyConfig((T("b", 1, chain=("ta",)), T("c", 1), T("d", 1, chain=("ta",))), name="o[a[b,d],c]"),
        FamilyConfig((T("b", 1, chain=("ta", "tg")), T("c", 1, chain=("ta", "tg"))), name="o[a[g[b,c]]]"),
    ]


def base_change_configs() -> list[FamilyConfig]:
    out = []
    for r in range(1, 5):
        for m in product((1, 2, 3), repeat=r):
            out.append(FamilyConfig.rtail(m))
    for cfg in chained_configs():
        for m in product((1, 2, 3), repeat=cfg.r):
            out.append(cfg.with_m(m))
    return out


def _semicontinuity_failures(reports) -> list[str]:
    bad = []
    for a in reports:
        for b in reports:
            if a.stratum < b.stratum and b.module_fiber < a.module_fiber:
                bad.append(f"module fiber drops from {sorted(a.stratum)} to {sorted(b.stratum)}")
            if a.stratum < b.stratum and b.h0 < a.h0:
                bad.append(f"h0 drops from {sorted(a.stratum)} to {sorted(b.stratum)}")
    return bad


def base_change_table() -> tuple[bool, str]:
    """Fiber ranks against fiberwise cohomology over every stratum."""

    def checks():
        for cfg in base_change_configs():
            tag = f"{cfg.name or 'config'} m={cfg.m}"
            s = sum(cfg.m)
            model = pushforward(cfg)
            yield len(pushforward_with_D(cfg)) == s + 1, f"{tag}: rank with D"
            yield stratum_fiber_rank(model) == s, f"{tag}: generic rank"
            reports = stratum_table(cfg)
            deepest = reports[-1]
            yield (deepest.h0, deepest.h1) == (s + 1, 1), f"{tag}: deepest stratum (h0,h1)={deepest.h0, deepest.h1}"
            for rep in reports:
                yield rep.chi == s, f"{tag} {sorted(rep.stratum)}: chi={rep.chi}"
                if rep.h1 == 0:
                    yield rep.verdict == EQUAL, f"{tag} {sorted(rep.stratum)}: module {rep.module_fiber} vs h0 {rep.h0}"
                else:
                    yield rep.module_fiber >= rep.generic_rank, f"{tag} {sorted(rep.stratum)}: {rep.verdict}"
            bad = _semicontinuity_failures(reports)
            yield not bad, f"{tag}: {bad[0] if bad else ''}"

    n, bad = _first_failure(checks())
    return bad is None, bad or f"{len(base_change_configs())} configs, {n} facts"


# --- 4 ----------------------------------------------------------------------

CHAIN_PATTERNS = ((), ("g1",), ("g2",), ("g1", "g2"), ("g2", "g1"))


def oracle_rows() -> list[tuple[Monomial, ...]]:
    """Beta rows of every valid family with at most 5 tails and chains from two ghosts."""
    rows = []
    for r in range(1, 6):
        for patterns in combinations_with_replacement(CHAIN_PATTERNS, r):
            tails = tuple(TailSpec(str(i + 1), 1, chain=p) for i, p in enumerate(patterns))
            try:
                cfg = FamilyConfig(tails)
            except ValueError:
                continue
            rows.append(beta_map(cfg).entries)
    return rows


def syzygy_oracle(degree_bound: int = 6) -> tuple[bool, str]:
    """Lcm syzygies span the brute-force kernel in every degree up to the bound."""
    rows = oracle_rows()
    for row in rows:
        brute = truncated_kernel_dim(row, degree_bound)
        spanned = syzygy_span_dims(row, monomial_syzygies(row), degree_bound)
        if brute != spanned:
            return False, f"row {tuple(map(str, row))}: kernel {brute} vs span {spanned}"
    return True, f"{len(rows)} rows, degrees 0..{degree_bound}"


# --- 5 ----------------------------------------------------------------------


def blowup_resolves() -> tuple[bool, str]:
    """r-tail kernels are not free for r = 3, 4 and become free after one blowup."""
    parts = []
    ok = True
    for r, want in ((3, (3, 2)), (4, (6, 3))):
        cfg = FamilyConfig.rtail([1] * r)
        before = resolve_check(cfg)
        w = before.witness()
        dims = (w.freeness.origin_dim, w.freeness.generic_dim) if w else None
        after = resolve_check(cfg, specs=[deepest_stratum_blowup(cfg)])
        good = (not before.resolved) and dims == want and after.resolved and len(after.charts) == r
        ok &= good
        parts.append(f"r={r}: NOT_FREE{dims} -> {len(after.charts)} charts {'all FREE' if after.resolved else 'not all FREE'}")
    return ok, "; ".join(parts)


# --- 6 ----------------------------------------------------------------------


def extension_reports(k_max: int = 5) -> tuple[bool, str]:
    def checks():
        for m in range(1, 6):
            rep = extend_all(m, NONE, k_max)
            want = tuple(str(rational_monomial(m, i)) for i in range(m + 1) if i != 1)
            obstructed = str(rational_monomial(m, 1))
            yield rep.surviving == want, f"m={m} none: surviving {rep.surviving}"
            yield rep.levels[0].status[obstructed] != EXTENDS, f"m={m} none: {obstructed} should be obstructed"
            yield all(lv.obstruction == 0 for lv in rep.levels), f"m={m} none: nonzero obstruction"
            yield all(rep.extends_through(l) == k_max for l in want), f"m={m} none: not through level {k_max}"
            tw = extend_all(m, D0_MINUS_D1, k_max)
            full = tuple(str(rational_monomial(m, i)) for i in range(1, m + 1))
            yield tw.basis.labels == full and tw.surviving == full, f"m={m} twist: surviving {tw.surviving}"
            yield all(lv.obstruction == 0 for lv in tw.levels), f"m={m} twist: nonzero obstruction"
        yield obstruction_space(2, NONE, 1, rational_degree=-2) > 0, "degree -2 control should be obstructed"

    n, bad = _first_failure(checks())
    return bad is None, bad or f"{n} facts for m=1..5, levels 1..{k_max}"


# --- 7 ----------------------------------------------------------------------


def cocycle_checks() -> tuple[bool, str]:
    def checks():
        for m in range(6):
            triv = blowup_trivialization(m)
            res = check_cocycle(triv)
            yield res.ok, f"m={m}: {res.failure}"
            for what, mutated in exponent_mutations(triv):
                yield not check_cocycle(mutated).ok, f"m={m}: mutation {what} still passes"

    n, bad = _first_failure(checks())
    return bad is None, bad or f"m=0..5 pass, {n - 6} single-exponent mutations all fail"


# --- 8 ----------------------------------------------------------------------


def _multidegrees(count: int, seed: int = 1) -> list[MultiDegree]:
    rng = random.Random(seed)
    return [MultiDegree(tuple(rng.randint(-6, 6) for _ in range(rng.randint(1, 4)))) for _ in range(count)]


def random_nodal_curve(rng: random.Random) -> tuple[CurveGraph, BundleOnCurve]:
    """A genus-one curve: an elliptic core or a rational cycle, with trees of tails."""
    comps, nodes, degrees, elliptic = [], [], {}, {}
    if rng.random() < 0.5:
        comps.append(Component("c0", 1))
        d = rng.randint(0, 3)
        degrees["c0"] = d
        elliptic["c0"] = EllipticBundleData(d, trivial=(d == 0 and rng.random() < 0.5))
        anchors = ["c0"]
    else:
        k = rng.randint(1, 3)
        for i in range(k):
            comps.append(Component(f"c{i}", 0))
            degrees[f"c{i}"] = rng.randint(-1, 2)
        if k == 1:
            nodes.append(Node("n0", Endpoint("c0", ZERO), Endpoint("c0", INFINITY)))
        else:
            for i in range(k):
                nodes.append(Node(f"n{i}", Endpoint(f"c{i}", INFINITY), Endpoint(f"c{(i + 1) % k}", ZERO)))
        anchors = [f"c{i}" for i in range(k)]
    for j in range(rng.randint(0, 4)):
        cid = f"r{j}"
        parent = rng.choice(anchors)
        comps.append(Component(cid, 0))
        degrees[cid] = rng.randint(-1, 3)
        nodes.append(Node(f"m{j}", Endpoint(cid, ZERO), Endpoint(parent, f"p{j}")))
        anchors.append(cid)
    return CurveGraph(tuple(comps), tuple(nodes)), BundleOnCurve(degrees, elliptic)


def random_monomial_rows(count: int, seed: int = 3) -> list[tuple[Monomial, ...]]:
    rng = random.Random(seed)
    names = ("x", "y", "z")
    rows = []
    for _ in range(count):
        n = rng.randint(1, 3)
        rows.append(tuple(Monomial({v: rng.randint(0, 2) for v in names}) for _ in range(n)))
    return rows


def property_suites() -> tuple[bool, str]:
    def checks():
        for a in _multidegrees(500):
            h = h_multi(a)
            dual = h_multi(MultiDegree(tuple(-x - 2 for x in a.degrees)))
            yield h == tuple(reversed(dual)), f"Serre duality fails for {a}"
            chi = sum((-1) ** i * x for i, x in enumerate(h))
            yield chi == euler_characteristic(a), f"chi of {a}: {chi}"
            prod_chi = 1
            for d in a.degrees:
                prod_chi *= euler_characteristic(MultiDegree.of(d))
            yield chi == prod_chi, f"chi not multiplicative for {a}"
        rng = random.Random(2)
        for i in range(100):
            graph, bundle = random_nodal_curve(rng)
            h0, h1 = h0_h1(graph, bundle)
            yield h0 - h1 == euler_char(graph, bundle), f"curve #{i}: h0-h1={h0 - h1}, chi={euler_char(graph, bundle)}"
        g = Monomial({"x": 1, "w": 1})
        for row in random_monomial_rows(50):
            base = kernel_local_freeness(row)
            scaled = kernel_local_freeness(tuple(g * e for e in row))
            yield base == scaled, f"gcd invariance fails for {tuple(map(str, row))}"

    n, bad = _first_failure(checks())
    return bad is None, bad or f"{n} facts (500 multidegrees, 100 curves, 50 rows)"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "one-tail direct image", one_tail_direct_image),
    (2, "splitting certificates", splitting_certificates),
    (3, "fiber rank and base change table", base_change_table),
    (4, "syzygy oracle equivalence", syzygy_oracle),
    (5, "blowup resolves the r-tail kernel", blowup_resolves),
    (6, "extension reports", extension_reports),
    (7, "cocycle verification", cocycle_checks),
    (8, "property suites", property_suites),
]


def run_criterion(number: int) -> CriterionResult:
    for n, title, fn in CRITERIA:
        if n == number:
            start = time.perf_counter()
            ok, detail = fn()
            return CriterionResult(n, title, ok, detail, time.perf_counter() - start)
    raise KeyError(number)


def run_all() -> list[CriterionResult]:
    return [run_criterion(n) for n, _, _ in CRITERIA]
