import random

import pytest

from genusone.acceptance import random_nodal_curve
from genusone.cohomology import EllipticBundleData
from genusone.nodalcurve import (
    INFINITY,
    ZERO,
    BundleOnCurve,
    Component,
    CurveGraph,
    Endpoint,
    Node,
    UnsupportedEvaluation,
    core,
    euler_char,
    h0_h1,
    tails,
)


def elliptic_with_tails(degrees, core_degree=0, trivial=True):
    comps = [Component("o", 1)] + [Component(f"c{i}", 0) for i in range(len(degrees))]
    nodes = [Node(f"n{i}", Endpoint(f"c{i}", ZERO), Endpoint("o", f"q{i}")) for i in range(len(degrees))]
    bundle = BundleOnCurve(
        {"o": core_degree, **{f"c{i}": d for i, d in enumerate(degrees)}},
        {"o": EllipticBundleData(core_degree, trivial=trivial and core_degree == 0)},
    )
    return CurveGraph(tuple(comps), tuple(nodes)), bundle


def two_cycle_with_tail():
    comps = (Component("x"), Component("y"), Component("z"))
    nodes = (
        Node("n1", Endpoint("x", ZERO), Endpoint("y", ZERO)),
        Node("n2", Endpoint("x", INFINITY), Endpoint("y", INFINITY)),
        Node("n3", Endpoint("z", ZERO), Endpoint("x", "p")),
    )
    return CurveGraph(comps, nodes)


def oabc():
    comps = (Component("o", 1), Component("a"), Component("b"), Component("c"))
    nodes = (
        Node("na", Endpoint("a", ZERO), Endpoint("o", "q")),
        Node("nb", Endpoint("b", ZERO), Endpoint("a", "p")),
        Node("nc", Endpoint("c", ZERO), Endpoint("a", "r")),
    )
    return CurveGraph(comps, nodes)


def test_core_of_elliptic_with_three_tails():
    graph, _ = elliptic_with_tails([1, 1, 1])
    assert core(graph) == {"o"}
    assert len(tails(graph)) == 3


def test_smooth_elliptic():
    graph = CurveGraph((Component("o", 1),))
    assert core(graph) == {"o"}
    assert tails(graph) == []
    assert h0_h1(graph, BundleOnCurve({"o": 3})) == (3, 0)
    assert euler_char(graph, BundleOnCurve({"o": 3})) == 3


def test_core_of_rational_cycle():
    graph = two_cycle_with_tail()
    assert core(graph) == {"x", "y"}
    assert tails(graph) == [frozenset({"z"})]


def test_oabc_has_one_tail():
    assert tails(oabc()) == [frozenset({"a", "b", "c"})]


def test_oabc_euler_char():
    bundle = BundleOnCurve({"o": 0, "a": 0, "b": 1, "c": 1}, {"o": EllipticBundleData(0, trivial=True)})
    assert euler_char(oabc(), bundle) == 2
    assert h0_h1(oabc(), bundle) == (3, 1)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_trivial_core_one_tail(m):
    graph, bundle = elliptic_with_tails([m])
    assert h0_h1(graph, bundle) == (m + 1, 1)
    assert euler_char(graph, bundle) == m


@pytest.mark.parametrize("degrees", [(1, 1), (1, 2, 3), (2, 1, 1, 1)])
def test_trivial_core_several_tails(degrees):
    graph, bundle = elliptic_with_tails(list(degrees))
    assert h0_h1(graph, bundle) == (1 + sum(degrees), 1)


def test_degree_zero_core_needs_triviality_flag():
    graph, _ = elliptic_with_tails([1])
    with pytest.raises(UnsupportedEvaluation):
        h0_h1(graph, BundleOnCurve({"o": 0, "c0": 1}))


def test_divisor_node_only_for_degree_one():
    graph, _ = elliptic_with_tails([1])
    bundle = BundleOnCurve({"o": 2, "c0": 1}, {"o": EllipticBundleData(2, divisor_nodes=frozenset({"n0"}))})
    with pytest.raises(UnsupportedEvaluation):
        h0_h1(graph, bundle)


def test_point_at_node_kills_evaluation():
    graph, _ = elliptic_with_tails([0])
    bundle = BundleOnCurve({"o": 1, "c0": 0}, {"o": EllipticBundleData(1, divisor_nodes=frozenset({"n0"}))})
    # the section of O(q) vanishes at q, so only the glued constant survives
    assert h0_h1(graph, bundle) == (1, 0)


def test_invalid_graphs():
    with pytest.raises(ValueError):
        CurveGraph((Component("a"), Component("b")))
    with pytest.raises(ValueError):
        CurveGraph((Component("a", 2),))
    with pytest.raises(ValueError):
        CurveGraph((Component("a", 1),), (Node("n", Endpoint("a", "p"), Endpoint("a", "q")),))
    with pytest.raises(ValueError):
        core(CurveGraph((Component("a"),)))


@pytest.mark.parametrize("seed", range(20))
def test_riemann_roch_on_random_curves(seed):
    rng = random.Random(seed)
    for _ in range(5):
        graph, bundle = random_nodal_curve(rng)
        h0, h1 = h0_h1(graph, bundle)
        assert h0 - h1 == euler_char(graph, bundle)
        assert h0 >= 0 and h1 >= 0
