import pytest
from hypothesis import given, strategies as st

from genusone.cohomology import EllipticBundleData
from genusone.config import (
    ConfigDocument,
    ConfigError,
    CurveDoc,
    ExtensionParams,
    fixture_names,
    load_config,
    parse_config,
    render_config,
)
from genusone.family import FamilyConfig, TailSpec
from genusone.nodalcurve import ZERO, BundleOnCurve, Component, CurveGraph, Endpoint, Node

FAMILY_TEXT = """\
# comment line
meta.kind = family
family.base = local
family.tails = a
tail.a.m = 2
"""


def test_fixture_rtail3():
    doc = load_config("rtail3.fam")
    assert doc.kind == "family"
    assert doc.body.r == 3 and doc.body.m == (1, 1, 1)


def test_fixture_oabc():
    cfg = load_config("oabc.fam").body
    assert [t.chain for t in cfg.tails] == [("ta",), ("ta",)]
    assert cfg.parameters() == ("tb", "tc", "ta")


@pytest.mark.parametrize("name", fixture_names())
def test_fixtures_round_trip(name):
    doc = load_config(name)
    assert parse_config(render_config(doc)) == doc


def test_defaults():
    doc = parse_config(FAMILY_TEXT)
    assert doc.body.tails == (TailSpec("a", 2, "ta"),)
    assert doc.name == ""


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        (FAMILY_TEXT + "tail.a.colour = red\n", 6, "unknown key 'tail.a.colour'"),
        (FAMILY_TEXT.replace("m = 2", "m = two"), 5, "expected an integer"),
        (FAMILY_TEXT + "tail.a.m = 3\n", 6, "duplicate key"),
        (FAMILY_TEXT + "just words\n", 6, "expected 'key = value'"),
        (FAMILY_TEXT.replace("local", "global"), 3, "expected one of"),
        ("meta.kind = family\n", 1, "missing required key 'family.base'"),
        (FAMILY_TEXT.replace("m = 2", "m = -1"), 5, "negative multiplicity"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(ConfigError) as err:
        parse_config(text)
    assert err.value.line == line
    assert fragment in str(err.value)


def test_error_column_points_at_value():
    with pytest.raises(ConfigError) as err:
        parse_config(FAMILY_TEXT.replace("m = 2", "m = x"))
    assert err.value.column == len("tail.a.m = ") + 1


def test_elliptic_data_on_rational_component_rejected():
    text = "meta.kind = curve\ncurve.components = a\ncomponent.a.genus = 0\ncomponent.a.trivial = true\n"
    with pytest.raises(ConfigError):
        parse_config(text)


names = st.text("abcdefgh", min_size=1, max_size=3)


@st.composite
def family_docs(draw):
    tail_names = draw(st.lists(names, min_size=1, max_size=3, unique=True))
    ghosts = draw(st.lists(st.sampled_from(["g1", "g2"]), max_size=2, unique=True))
    tails = tuple(
        TailSpec(n, draw(st.integers(0, 4)), f"t{n}", tuple(ghosts[: draw(st.integers(0, len(ghosts)))]))
        for n in tail_names
    )
    name = draw(st.sampled_from(["", "x", "oabc"]))
    cfg = FamilyConfig(tails, draw(st.sampled_from(["local", "multiprojective"])), name)
    return ConfigDocument("family", cfg, name, draw(st.sampled_from(["", "a comment"])))


@st.composite
def curve_docs(draw):
    k = draw(st.integers(0, 3))
    comps = (Component("o", 1),) + tuple(Component(f"r{i}") for i in range(k))
    nodes = tuple(Node(f"n{i}", Endpoint(f"r{i}", ZERO), Endpoint("o", f"q{i}")) for i in range(k))
    degrees = {c.id: draw(st.integers(-2, 3)) for c in comps}
    elliptic = {}
    if draw(st.booleans()):
        d = degrees["o"]
        elliptic["o"] = EllipticBundleData(d, trivial=(d == 0 and draw(st.booleans())))
    return ConfigDocument("curve", CurveDoc(CurveGraph(comps, nodes), BundleOnCurve(degrees, elliptic)))


extension_docs = st.builds(
    lambda m, t, k: ConfigDocument("extension", ExtensionParams(m, t, k), "ext"),
    st.integers(1, 6),
    st.sampled_from(["none", "d0-d1"]),
    st.integers(1, 6),
)


@given(st.one_of(family_docs(), curve_docs(), extension_docs))
def test_render_parse_round_trip(doc):
    assert parse_config(render_config(doc)) == doc


def test_document_fields_are_single_lines():
    with pytest.raises(ValueError):
        ConfigDocument("extension", ExtensionParams(1), comment="two\nlines")
