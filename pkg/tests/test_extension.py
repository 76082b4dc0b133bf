import pytest

from genusone.extension import (
    D0_MINUS_D1,
    EXTENDS,
    NONE,
    OBSTRUCTED,
    blowup_trivialization,
    central_sections,
    check_cocycle,
    extend_all,
    extend_once,
    exponent_mutations,
    fiber_product,
    obstruction_space,
)


@pytest.mark.parametrize(
    "m, twist, labels",
    [
        (1, NONE, ("u0", "u1")),
        (2, NONE, ("u0^2", "u0*u1", "u1^2")),
        (3, D0_MINUS_D1, ("u0^2*u1", "u0*u1^2", "u1^3")),
    ],
)
def test_central_sections(m, twist, labels):
    assert central_sections(m, twist).labels == labels


def test_bad_arguments():
    with pytest.raises(ValueError):
        central_sections(0)
    with pytest.raises(ValueError):
        central_sections(1, "d1-d0")
    with pytest.raises(ValueError):
        obstruction_space(1, NONE, 0)


@pytest.mark.parametrize(
    "m, twist, extendable, obstructed",
    [
        (1, NONE, ("u0",), ("u1",)),
        (2, NONE, ("u0^2", "u1^2"), ("u0*u1",)),
        (2, D0_MINUS_D1, ("u0*u1", "u1^2"), ()),
    ],
)
def test_extend_once(m, twist, extendable, obstructed):
    res = extend_once(m, twist)
    assert res.extendable == extendable
    assert res.obstructed == obstructed


@pytest.mark.parametrize("m", range(1, 7))
def test_level_one_bookkeeping(m):
    res = extend_once(m)
    assert res.codimension == 1
    assert fiber_product(m).dim == m + 1
    assert extend_once(m, D0_MINUS_D1).codimension == 0


@pytest.mark.parametrize("twist", [NONE, D0_MINUS_D1])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_obstruction_independent_of_level(m, twist):
    assert {obstruction_space(m, twist, k) for k in range(1, 6)} == {0}


def test_obstruction_control_is_not_vacuous():
    assert obstruction_space(2, NONE, 3, rational_degree=-2) > 0


def test_extend_all_untwisted():
    rep = extend_all(2, NONE, 5)
    assert rep.surviving == ("u0^2", "u1^2")
    assert rep.levels[0].status["u0*u1"] == OBSTRUCTED
    assert rep.extends_through("u1^2") == 5
    assert [lv.h0 for lv in rep.levels] == [3, 5, 7, 9, 11]


def test_extend_all_twisted():
    rep = extend_all(3, D0_MINUS_D1, 5)
    assert rep.surviving == ("u0^2*u1", "u0*u1^2", "u1^3")
    assert all(lv.obstruction == 0 for lv in rep.levels)


@pytest.mark.parametrize("m", range(1, 6))
def test_tautological_section_always_extends(m):
    rep = extend_all(m, NONE, 4)
    assert all(lv.status[f"u0^{m}" if m > 1 else "u0"] == EXTENDS for lv in rep.levels)


@pytest.mark.parametrize("m", range(0, 6))
def test_cocycle_holds(m):
    assert check_cocycle(blowup_trivialization(m)).ok


@pytest.mark.parametrize("m", range(0, 6))
def test_every_mutation_breaks_cocycle(m):
    mutations = list(exponent_mutations(blowup_trivialization(m)))
    assert len(mutations) == 18
    for what, triv in mutations:
        assert not check_cocycle(triv).ok, what


def test_transition_with_squared_exponent_is_rejected():
    res = check_cocycle(blowup_trivialization(2, literal_transition=True))
    assert not res.ok
    assert "coordinate t" in res.failure
