"""Command-line front end.

    genusone cohom 1,-3
    genusone curve ghost_core.fam
    genusone family rtail3.fam --m 1,1,1 --fiber-ranks
    genusone blowup rtail3.fam --center t1,t2,t3
    genusone extend --m 2 --twist none --kmax 5
    genusone selftest

Exit codes: 0 success, 1 computation error or failed selftest, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import acceptance
from .blowup import BlowupSpec, resolve_check
from .cohomology import MultiDegree, euler_characteristic, h_multi
from .config import ConfigDocument, ConfigError, CurveDoc, ExtensionParams, load_config
from .exactalg import DEFAULT_DEGREE_BOUND, GenericityError, StabilizationError
from .extension import TWISTS, extend_all
from .family import (
    MULTIPROJECTIVE,
    FamilyConfig,
    pushforward,
    pushforward_with_D,
    r1_model,
    splitting_certificate,
    stratum_table,
)
from .nodalcurve import UnsupportedEvaluation, core, euler_char, h0_h1, tails


class UsageError(Exception):
    pass


@dataclass
class Report:
    """Ordered facts plus optional tables, rendered as text or key=value lines."""

    facts: list[tuple[str, str]] = field(default_factory=list)
    tables: list[tuple[str, list[str], list[list[str]]]] = field(default_factory=list)
    ok: bool = True

    def add(self, key: str, value) -> None:
        self.facts.append((key, str(value)))

    def render(self, fmt: str) -> str:
        out = []
        if fmt == "kv":
            out += [f"{k}={v}" for k, v in self.facts]
            for name, headers, rows in self.tables:
                for i, row in enumerate(rows):
                    out += [f"{name}.{i}.{h}={v}" for h, v in zip(headers, row)]
        else:
            width = max((len(k) for k, _ in self.facts), default=0)
            out += [f"{k.ljust(width)}  {v}" for k, v in self.facts]
            for name, headers, rows in self.tables:
                widths = [max(len(x) for x in col) for col in zip(headers, *rows)]
                out.append("")
                out.append(f"{name}:")
                out.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
                out += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]
        return "\n".join(out) + "\n"


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _name_list(text: str) -> tuple[str, ...]:
    items = tuple(x.strip() for x in text.split(",") if x.strip())
    if not items:
        raise argparse.ArgumentTypeError("expected a nonempty comma-separated list")
    return items


def _load(path: str, kind: str) -> ConfigDocument:
    try:
        doc = load_config(path)
    except FileNotFoundError:
        raise UsageError(f"no such config file: {path}") from None
    if doc.kind != kind:
        raise UsageError(f"{path}: expected a {kind} config, got {doc.kind}")
    return doc


def _fmt_stratum(s) -> str:
    return "{" + ",".join(sorted(s)) + "}" if s else "generic"


def cmd_cohom(args) -> Report:
    a = MultiDegree(args.degrees)
    rep = Report()
    rep.add("bundle", a)
    for i, h in enumerate(h_multi(a)):
        rep.add(f"h{i}", h)
    rep.add("chi", euler_characteristic(a))
    return rep


def cmd_curve(args) -> Report:
    doc = _load(args.config, "curve")
    body: CurveDoc = doc.body
    h0, h1 = h0_h1(body.graph, body.bundle)
    rep = Report()
    rep.add("name", doc.name or "-")
    rep.add("components", len(body.graph.components))
    rep.add("nodes", len(body.graph.nodes))
    rep.add("arithmetic_genus", body.graph.arithmetic_genus)
    if body.graph.arithmetic_genus == 1:
        rep.add("core", ",".join(sorted(core(body.graph))))
        rep.add("tails", ";".join(",".join(sorted(t)) for t in tails(body.graph)) or "-")
    rep.add("degree", body.bundle.total_degree)
    rep.add("h0", h0)
    rep.add("h1", h1)
    rep.add("chi", euler_char(body.graph, body.bundle))
    return rep


def _family(args) -> FamilyConfig:
    cfg: FamilyConfig = _load(args.config, "family").body
    if args.m is not None:
        try:
            cfg = cfg.with_m(args.m)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return cfg


def cmd_family(args) -> Report:
    cfg = _family(args)
    model = pushforward(cfg)
    rep = Report()
    rep.add("name", cfg.name or "-")
    rep.add("base", cfg.base_mode)
    rep.add("m", ",".join(map(str, cfg.m)))
    if model.dropped:
        rep.add("normalized_away", ",".join(model.dropped))
    rep.add("parameters", ",".join(model.parameters))
    rep.add("beta", model.beta)
    with_d = pushforward_with_D(model.config)
    rep.add("with_D", " + ".join(map(str, with_d)))
    rep.add("V_m0", " + ".join(map(str, model.V_m0)))
    rep.add("V1", " + ".join(map(str, model.V1)))
    rep.add("kernel_generators", len(model.kernel_generators))
    for i, g in enumerate(model.kernel_generators):
        rep.add(f"kernel.{i}", "(" + ", ".join(map(str, g)) + ")")
    rep.add("R1", r1_model(model.config))
    if cfg.base_mode == MULTIPROJECTIVE:
        # splitting obstruction of the last inductive step into each tail
        for j, t in enumerate(cfg.tails):
            if t.m >= 1:
                prev = tuple(mi - (k == j) for k, mi in enumerate(cfg.m))
                rep.add(f"splitting_ext1.{t.name}", splitting_certificate(cfg, prev, j))
    if args.fiber_ranks:
        rows = []
        for r in stratum_table(model.config, None, args.degree_bound):
            rows.append([_fmt_stratum(r.stratum), str(r.module_fiber), str(r.h0), str(r.h1), str(r.chi), r.verdict])
        rep.tables.append(("strata", ["stratum", "rank", "h0", "h1", "chi", "verdict"], rows))
    return rep


def cmd_blowup(args) -> Report:
    cfg = _family(args)
    specs = [BlowupSpec(c) for c in args.center]
    try:
        result = resolve_check(cfg, None, specs, args.degree_bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = Report()
    rep.add("name", cfg.name or "-")
    rep.add("centers", " ; ".join(",".join(s.center) for s in specs) or "-")
    rows = [[c.label, "(" + ", ".join(map(str, c.row)) + ")", str(c.freeness)] for c in result.charts]
    rep.tables.append(("charts", ["chart", "beta", "kernel"], rows))
    rep.add("verdict", "RESOLVED" if result.resolved else "NOT RESOLVED")
    return rep


def cmd_extend(args) -> Report:
    params = ExtensionParams(1)
    if args.config:
        params = _load(args.config, "extension").body
    m = args.m[0] if args.m else params.m
    if args.m and len(args.m) != 1:
        raise UsageError("extend takes a single multiplicity")
    twist = args.twist or params.twist
    kmax = args.kmax or params.kmax
    if m < 1 or kmax < 1:
        raise UsageError("m and kmax must be >= 1")
    report = extend_all(m, twist, kmax)
    rep = Report()
    rep.add("m", m)
    rep.add("twist", twist)
    rep.add("kmax", kmax)
    rows = []
    for lv in report.levels:
        rows.append([str(lv.level), str(lv.h0), str(lv.obstruction)] + [lv.status[l] for l in report.basis.labels])
    rep.tables.append(("levels", ["level", "h0", "obstruction"] + list(report.basis.labels), rows))
    rep.add("surviving", ", ".join(report.surviving) or "-")
    return rep


def cmd_selftest(args) -> Report:
    rep = Report()
    results = acceptance.run_all()
    for r in results:
        rep.add(f"criterion.{r.number}", ("PASS " if r.passed else "FAIL ") + f"{r.title}: {r.detail}")
    rep.add("passed", f"{sum(r.passed for r in results)}/{len(results)}")
    rep.ok = all(r.passed for r in results)
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genusone", description=__doc__.split("\n")[0])
    p.add_argument("--format", choices=("text", "kv"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, config=True, optional_config=False):
        if config:
            sp.add_argument("config", nargs="?" if optional_config else None, help="config file or bundled fixture name")
        sp.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND)
        sp.add_argument("--format", choices=("text", "kv"), default=argparse.SUPPRESS)

    sp = sub.add_parser("cohom", help="cohomology of O(a_1,...,a_r) on (P^1)^r")
    sp.add_argument("degrees", type=_int_list)
    common(sp, config=False)
    sp.set_defaults(func=cmd_cohom)

    sp = sub.add_parser("curve", help="h0 and h1 of a line bundle on a nodal curve")
    common(sp)
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("family", help="direct image model of a family")
    common(sp)
    sp.add_argument("--m", type=_int_list)
    sp.add_argument("--fiber-ranks", action="store_true")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("blowup", help="local freeness after blowups of the base")
    common(sp)
    sp.add_argument("--m", type=_int_list)
    sp.add_argument("--center", type=_name_list, action="append", default=[])
    sp.set_defaults(func=cmd_blowup)

    sp = sub.add_parser("extend", help="extension of central-fiber sections")
    common(sp, optional_config=True)
    sp.add_argument("--m", type=_int_list)
    sp.add_argument("--twist", choices=TWISTS)
    sp.add_argument("--kmax", type=int)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("selftest", help="run the acceptance checks")
    common(sp, config=False)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        rep = args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (StabilizationError, GenericityError, UnsupportedEvaluation, ValueError, ArithmeticError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(rep.render(args.format))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
