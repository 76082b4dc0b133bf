"""Line-oriented configuration files for curves, families and extension runs.

Every non-blank line is ``section.key = value``; lines starting with ``#``
are comments. Lists are comma separated. Example::

    meta.kind = family
    meta.name = oabc
    family.base = local
    family.tails = b, c
    tail.b.m = 1
    tail.b.chain = ta
    tail.c.m = 1
    tail.c.chain = ta

Curves use ``curve.components``, ``component.<id>.genus/degree/trivial/
divisor_nodes`` and ``node.<name> = <comp>:<label>, <comp>:<label>``;
extension runs use ``extension.m/twist/kmax``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Union

from .cohomology import EllipticBundleData
from .extension import TWISTS
from .family import LOCAL, MULTIPROJECTIVE, FamilyConfig, TailSpec
from .nodalcurve import BundleOnCurve, Component, CurveGraph, Endpoint, Node

NAME = re.compile(r"[A-Za-z0-9_]+")
KINDS = ("curve", "family", "extension")


class ConfigError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class ExtensionParams:
    m: int
    twist: str = "none"
    kmax: int = 5

    def __post_init__(self):
        if self.m < 1 or self.kmax < 1:
            raise ValueError("m and kmax must be >= 1")
        if self.twist not in TWISTS:
            raise ValueError(f"unknown twist {self.twist!r}")


@dataclass(frozen=True)
class CurveDoc:
    graph: CurveGraph
    bundle: BundleOnCurve


Body = Union[FamilyConfig, CurveDoc, ExtensionParams]


@dataclass(frozen=True)
class ConfigDocument:
    kind: str
    body: Body
    name: str = ""
    comment: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        for text in (self.name, self.comment):
            if "\n" in text or text != text.strip():
                raise ValueError("name and comment must be single trimmed lines")


@dataclass
class _Entry:
    value: str
    line: int
    column: int
    used: bool = False


class _Lines:
    """Key lookup that remembers positions and flags unused keys."""

    def __init__(self, text: str):
        self.entries: dict[str, _Entry] = {}
        self.last_line = 1
        for no, raw in enumerate(text.splitlines(), start=1):
            self.last_line = no
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            col = len(raw) - len(raw.lstrip()) + 1
            if "=" not in raw:
                raise ConfigError(no, col, "expected 'key = value'")
            key_part, value = raw.split("=", 1)
            key = key_part.strip()
            if not key or not all(NAME.fullmatch(p) for p in key.split(".")):
                raise ConfigError(no, col, f"malformed key {key!r}")
            if key in self.entries:
                raise ConfigError(no, col, f"duplicate key {key!r} (first on line {self.entries[key].line})")
            vcol = len(key_part) + 2 + (len(value) - len(value.lstrip()))
            self.entries[key] = _Entry(value.strip(), no, vcol)

    def get(self, key: str, default=None) -> _Entry | None:
        e = self.entries.get(key)
        if e is None:
            return default
        e.used = True
        return e

    def need(self, key: str) -> _Entry:
        e = self.get(key)
        if e is None:
            raise ConfigError(self.last_line, 1, f"missing required key {key!r}")
        return e

    def check_all_used(self) -> None:
        for key, e in self.entries.items():
            if not e.used:
                raise ConfigError(e.line, 1, f"unknown key {key!r}")


def _int(e: _Entry) -> int:
    try:
        return int(e.value)
    except ValueError:
        raise ConfigError(e.line, e.column, f"expected an integer, got {e.value!r}") from None


def _bool(e: _Entry) -> bool:
    if e.value not in ("true", "false"):
        raise ConfigError(e.line, e.column, f"expected true or false, got {e.value!r}")
    return e.value == "true"


def _names(e: _Entry, allow_empty: bool = True) -> tuple[str, ...]:
    if not e.value:
        if allow_empty:
            return ()
        raise ConfigError(e.line, e.column, "expected a nonempty list")
    items = [p.strip() for p in e.value.split(",")]
    for item in items:
        if not NAME.fullmatch(item):
            raise ConfigError(e.line, e.column, f"invalid name {item!r}")
    return tuple(items)


def _choice(e: _Entry, options: tuple[str, ...]) -> str:
    if e.value not in options:
        raise ConfigError(e.line, e.column, f"expected one of {', '.join(options)}, got {e.value!r}")
    return e.value


def _wrap(e: _Entry, build):
    try:
        return build()
    except ConfigError:
        raise
    except (ValueError, KeyError) as exc:
        raise ConfigError(e.line, e.column, str(exc)) from None


def _parse_family(lines: _Lines, name: str) -> FamilyConfig:
    base = _choice(lines.need("family.base"), (LOCAL, MULTIPROJECTIVE))
    tails_entry = lines.need("family.tails")
    tails = []
    for t in _names(tails_entry, allow_empty=False):
        param = lines.get(f"tail.{t}.param")
        chain = lines.get(f"tail.{t}.chain")
        m_entry = lines.need(f"tail.{t}.m")
        m = _int(m_entry)
        tails.append(
            _wrap(
                m_entry,
                lambda: TailSpec(t, m, param.value if param else "", _names(chain) if chain else ()),
            )
        )
    return _wrap(tails_entry, lambda: FamilyConfig(tuple(tails), base, name))


def _endpoint(e: _Entry, text: str) -> Endpoint:
    parts = [p.strip() for p in text.split(":")]
    if len(parts) != 2 or not all(NAME.fullmatch(p) for p in parts):
        raise ConfigError(e.line, e.column, f"expected component:label, got {text.strip()!r}")
    return Endpoint(parts[0], parts[1])


def _parse_curve(lines: _Lines) -> CurveDoc:
    comps_entry = lines.need("curve.components")
    components, degrees, elliptic = [], {}, {}
    for cid in _names(comps_entry, allow_empty=False):
        g_entry = lines.need(f"component.{cid}.genus")
        genus = _int(g_entry)
        components.append(_wrap(g_entry, lambda: Component(cid, genus)))
        d_entry = lines.get(f"component.{cid}.degree")
        degrees[cid] = _int(d_entry) if d_entry else 0
        trivial = lines.get(f"component.{cid}.trivial")
        divisor = lines.get(f"component.{cid}.divisor_nodes")
        if (trivial or divisor) and genus != 1:
            bad = trivial or divisor
            raise ConfigError(bad.line, 1, f"elliptic data given for rational component {cid!r}")
        if trivial or divisor:
            at = trivial or divisor
            elliptic[cid] = _wrap(
                at,
                lambda: EllipticBundleData(
                    degrees[cid], _bool(trivial) if trivial else False, frozenset(_names(divisor)) if divisor else ()
                ),
            )
    nodes = []
    node_keys = sorted(
        (e.line, k) for k, e in lines.entries.items() if k.startswith("node.") and k.count(".") == 1
    )
    for _, key in node_keys:
        e = lines.get(key)
        ends = e.value.split(",")
        if len(ends) != 2:
            raise ConfigError(e.line, e.column, "a node joins exactly two branches")
        a, b = (_endpoint(e, x) for x in ends)
        nodes.append(Node(key.split(".", 1)[1], a, b))
    graph = _wrap(comps_entry, lambda: CurveGraph(tuple(components), tuple(nodes)))
    bundle = _wrap(comps_entry, lambda: BundleOnCurve(degrees, elliptic))
    return CurveDoc(graph, bundle)


def _parse_extension(lines: _Lines) -> ExtensionParams:
    m_entry = lines.need("extension.m")
    m = _int(m_entry)
    tw = lines.get("extension.twist")
    twist = _choice(tw, TWISTS) if tw else "none"
    k = lines.get("extension.kmax")
    kmax = _int(k) if k else 5
    return _wrap(m_entry, lambda: ExtensionParams(m, twist, kmax))


def parse_config(text: str) -> ConfigDocument:
    lines = _Lines(text)
    kind = _choice(lines.need("meta.kind"), KINDS)
    name_e, comment_e = lines.get("meta.name"), lines.get("meta.comment")
    name = name_e.value if name_e else ""
    comment = comment_e.value if comment_e else ""
    if kind == "family":
        body: Body = _parse_family(lines, name)
    elif kind == "curve":
        body = _parse_curve(lines)
    else:
        body = _parse_extension(lines)
    lines.check_all_used()
    return ConfigDocument(kind, body, name, comment)


def render_config(doc: ConfigDocument) -> str:
    out = [f"meta.kind = {doc.kind}"]
    if doc.name:
        out.append(f"meta.name = {doc.name}")
    if doc.comment:
        out.append(f"meta.comment = {doc.comment}")
    body = doc.body
    if isinstance(body, FamilyConfig):
        out.append(f"family.base = {body.base_mode}")
        out.append("family.tails = " + ", ".join(t.name for t in body.tails))
        for t in body.tails:
            out.append(f"tail.{t.name}.param = {t.param}")
            out.append(f"tail.{t.name}.m = {t.m}")
            if t.chain:
                out.append(f"tail.{t.name}.chain = " + ", ".join(t.chain))
    elif isinstance(body, CurveDoc):
        out.append("curve.components = " + ", ".join(body.graph.ids))
        for c in body.graph.components:
            out.append(f"component.{c.id}.genus = {c.genus}")
            out.append(f"component.{c.id}.degree = {body.bundle.degree(c.id)}")
            data = body.bundle.elliptic.get(c.id)
            if data is not None:
                out.append(f"component.{c.id}.trivial = {'true' if data.trivial else 'false'}")
                if data.divisor_nodes:
                    out.append(f"component.{c.id}.divisor_nodes = " + ", ".join(sorted(data.divisor_nodes)))
        for n in body.graph.nodes:
            out.append(f"node.{n.name} = {n.a}, {n.b}")
    else:
        out.append(f"extension.m = {body.m}")
        out.append(f"extension.twist = {body.twist}")
        out.append(f"extension.kmax = {body.kmax}")
    return "\n".join(out) + "\n"


def fixture_names() -> list[str]:
    return sorted(p.name for p in resources.files("genusone.fixtures").iterdir() if p.name.endswith(".fam"))


def load_config(path: str) -> ConfigDocument:
    """Read a config file; a bare name of a bundled fixture also works."""
    p = Path(path)
    if p.exists():
        return parse_config(p.read_text(encoding="utf-8"))
    if path in fixture_names():
        return parse_config(resources.files("genusone.fixtures").joinpath(path).read_text(encoding="utf-8"))
    raise FileNotFoundError(path)
