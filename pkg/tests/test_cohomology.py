import pytest
from hypothesis import given, strategies as st

from genusone.cohomology import (
    EllipticBundleData,
    MultiDegree,
    euler_characteristic,
    ext1,
    h_elliptic,
    h_multi,
    h_p1,
    splitting_obstruction,
)

multidegrees = st.lists(st.integers(-6, 6), min_size=1, max_size=4).map(lambda a: MultiDegree(tuple(a)))


@pytest.mark.parametrize("d, h", [(0, (1, 0)), (3, (4, 0)), (-1, (0, 0)), (-2, (0, 1)), (-5, (0, 4))])
def test_h_p1(d, h):
    assert h_p1(d) == h


def test_h_multi_examples():
    assert h_multi(MultiDegree.zero(3)) == (1, 0, 0, 0)
    assert h_multi(MultiDegree.of(-2, -2)) == (0, 0, 1)
    assert h_multi(MultiDegree.of(1, -3)) == (0, 4, 0)


@pytest.mark.parametrize("m", range(0, 6))
def test_one_factor_splitting(m):
    subs = [MultiDegree.of(-i) for i in range(m + 1)]
    assert splitting_obstruction(MultiDegree.of(-m - 1), subs) == 0


def test_non_split_witness():
    assert ext1(MultiDegree.of(0), MultiDegree.of(-2)) == 1
    assert ext1(MultiDegree.of(0), MultiDegree.of(0)) == 0


@pytest.mark.parametrize("mj, k", [(1, 1), (1, 2), (2, 3), (3, 2)])
def test_cross_slot_ext(mj, k):
    # Ext^1(O(-(mj+1) W_j), O(-k W_i)) = h^1(O(-k)) h^0(O(mj+1)) by Kunneth
    quotient = MultiDegree.unit(2, 1, -(mj + 1))
    sub = MultiDegree.unit(2, 0, -k)
    assert ext1(quotient, sub) == (k - 1) * (mj + 2)


def test_length_mismatch():
    with pytest.raises(ValueError):
        ext1(MultiDegree.of(0), MultiDegree.of(0, 0))
    with pytest.raises(ValueError):
        MultiDegree(())


@pytest.mark.parametrize(
    "data, h",
    [
        (EllipticBundleData(1), (1, 0)),
        (EllipticBundleData(3), (3, 0)),
        (EllipticBundleData(0), (0, 0)),
        (EllipticBundleData(0, trivial=True), (1, 1)),
        (EllipticBundleData(-2), (0, 2)),
    ],
)
def test_h_elliptic(data, h):
    assert h_elliptic(data) == h


def test_only_degree_zero_can_be_trivial():
    with pytest.raises(ValueError):
        EllipticBundleData(1, trivial=True)


@given(multidegrees)
def test_serre_duality(a):
    dual = MultiDegree(tuple(-x - 2 for x in a.degrees))
    assert h_multi(a) == tuple(reversed(h_multi(dual)))


@given(multidegrees)
def test_alternating_sum_is_chi(a):
    assert sum((-1) ** i * h for i, h in enumerate(h_multi(a))) == euler_characteristic(a)


@given(multidegrees, multidegrees)
def test_chi_multiplicative(a, b):
    joined = MultiDegree(a.degrees + b.degrees)
    assert euler_characteristic(joined) == euler_characteristic(a) * euler_characteristic(b)
