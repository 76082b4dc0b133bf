import pytest
from hypothesis import given, settings, strategies as st

from genusone.blowup import (
    BlowupSpec,
    Chart,
    charts,
    chart_map_values,
    deepest_stratum_blowup,
    kernel_local_freeness,
    pullback_beta,
    resolve_check,
)
from genusone.exactalg import Monomial, Polynomial
from genusone.family import FamilyConfig, TailSpec, beta_map

t1, t2, t3 = (Monomial.var(f"t{i}") for i in (1, 2, 3))
ta, tb, tc = (Monomial.var(n) for n in ("ta", "tb", "tc"))
OABC = FamilyConfig((TailSpec("b", 1, chain=("ta",)), TailSpec("c", 1, chain=("ta",))))

rows = st.lists(
    st.dictionaries(st.sampled_from(("x", "y")), st.integers(0, 2)).map(Monomial), min_size=1, max_size=3
)


def test_chart_substitutions():
    c1, c2 = charts(BlowupSpec(("t1", "t2")))
    assert c1.substitution == {"t1": t1, "t2": t1 * t2}
    assert c2.substitution == {"t1": t2 * t1, "t2": t2}
    (only,) = charts(BlowupSpec(("t1",)))
    assert only.substitution == {"t1": t1}
    assert len(charts(BlowupSpec(("t1", "t2", "t3")))) == 3


def test_invalid_centers():
    with pytest.raises(ValueError):
        BlowupSpec(())
    with pytest.raises(ValueError):
        BlowupSpec(("t1", "t1"))
    with pytest.raises(ValueError):
        resolve_check(FamilyConfig.rtail([1]), specs=[BlowupSpec(("t9",))])


def test_pullbacks():
    chart = Chart(("t1", "t2", "t3"), "t1")
    assert pullback_beta([t1, t2, t3], chart) == (t1, t1 * t2, t1 * t3)
    chart_b = Chart(("tb", "tc"), "tb")
    assert pullback_beta(beta_map(OABC), chart_b) == (ta * tb, ta * tb * tc)
    assert pullback_beta([t1], Chart(("t2", "t3"), "t2")) == (t1,)


@pytest.mark.parametrize(
    "row, text",
    [
        ((t1, t1 * t2, t1 * t3), "FREE(2)"),
        ((t1, t2, t3), "NOT_FREE(3, 2)"),
        ((t1, t2), "FREE(1)"),
        ((t1,), "FREE(0)"),
        ((ta * tb, ta * tc), "FREE(1)"),
    ],
)
def test_kernel_local_freeness(row, text):
    assert str(kernel_local_freeness(row)) == text


def test_empty_row():
    with pytest.raises(ValueError):
        kernel_local_freeness(())


@settings(max_examples=30, deadline=None)
@given(rows, st.dictionaries(st.sampled_from(("x", "y", "w")), st.integers(0, 2)).map(Monomial))
def test_gcd_invariance(row, g):
    assert kernel_local_freeness(row) == kernel_local_freeness(tuple(g * e for e in row))


@pytest.mark.parametrize("r", [3, 4])
def test_one_blowup_resolves_r_tails(r):
    cfg = FamilyConfig.rtail([1] * r)
    assert not resolve_check(cfg).resolved
    assert resolve_check(cfg, specs=[deepest_stratum_blowup(cfg)]).resolved


def test_resolve_examples():
    assert resolve_check(FamilyConfig.rtail([2])).resolved
    witness = resolve_check(FamilyConfig.rtail([1, 1, 1])).witness()
    assert (witness.freeness.origin_dim, witness.freeness.generic_dim) == (3, 2)


def test_free_rows_stay_free_in_every_chart():
    row = (t1, t2)
    for spec in (BlowupSpec(("t1", "t2")), BlowupSpec(("t1", "t3"))):
        for chart in charts(spec):
            assert kernel_local_freeness(pullback_beta(row, chart)).free


def test_sequences_compose():
    cfg = FamilyConfig.rtail([1, 1, 1])
    rep = resolve_check(cfg, specs=[BlowupSpec(("t1", "t2")), BlowupSpec(("t1", "t3"))])
    assert len(rep.charts) == 4


@pytest.mark.parametrize("chart_index", ["t1", "t2", "t3"])
def test_charts_reproduce_beta_values(chart_index):
    chart = Chart(("t1", "t2", "t3"), chart_index)
    row = (t1, t2, t3)
    pulled = pullback_beta(row, chart)
    for k in range(5):
        values = {"t1": 2 + k, "t2": 3 + 2 * k, "t3": 5 + 3 * k}
        image = chart_map_values(chart, values)
        for orig, new in zip(row, pulled):
            assert Polynomial.from_monomial(new).evaluate(values) == Polynomial.from_monomial(orig).evaluate(image)
