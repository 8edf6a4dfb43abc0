from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXAMPLE_ELEMENTS, EXAMPLE_XI
from oracles import brute_join, brute_meet, order_from_xi, subsets
from orthosps import (FinitePoset, LatticeError, OrderError, UnknownElementError, build_lattice,
                      join_family, meet_family, validate_complete_lattice)


@pytest.fixture
def example_lattice():
    return build_lattice(EXAMPLE_ELEMENTS, order_from_xi(EXAMPLE_ELEMENTS, EXAMPLE_XI))


def test_example_lattice_bounds(example_lattice):
    assert example_lattice.bottom == "1"
    assert example_lattice.top == "10"
    assert example_lattice.elements == tuple(EXAMPLE_ELEMENTS)


def test_two_element_chain():
    lat = build_lattice(["0", "1"], [("0", "1")])
    assert (lat.bottom, lat.top) == ("0", "1")
    assert lat.meet("0", "1") == "0"
    assert lat.join("0", "1") == "1"


def test_diamond_meet():
    lat = build_lattice(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    assert lat.meet("a", "b") == "0"
    assert lat.join("a", "b") == "1"


@pytest.mark.parametrize("family, expected", [({"4", "5"}, "2"), ({"4", "6"}, "1"), (set(), "10")])
def test_meet_family_example(example_lattice, family, expected):
    leq = order_from_xi(EXAMPLE_ELEMENTS, EXAMPLE_XI)
    oracle = brute_meet(EXAMPLE_ELEMENTS, leq, family)
    assert oracle == expected
    assert meet_family(example_lattice, family) == expected


@pytest.mark.parametrize("family, expected", [({"4", "6"}, "10"), ({"2", "5"}, "5"), (set(), "1")])
def test_join_family_example(example_lattice, family, expected):
    leq = order_from_xi(EXAMPLE_ELEMENTS, EXAMPLE_XI)
    assert brute_join(EXAMPLE_ELEMENTS, leq, family) == expected
    assert join_family(example_lattice, family) == expected


def test_unknown_element(example_lattice):
    with pytest.raises(UnknownElementError) as err:
        meet_family(example_lattice, {"11"})
    assert err.value.code == "E-UNKNOWN-ELEMENT"


def test_cycle_rejected():
    with pytest.raises(OrderError) as err:
        build_lattice(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    assert err.value.code == "E-ORDER"


def test_missing_meet_rejected_with_witness():
    with pytest.raises(LatticeError) as err:
        build_lattice(["a", "b", "1"], [("a", "1"), ("b", "1")])
    assert err.value.code == "E-LATTICE"
    assert sorted(err.value.witness) == ["a", "b"]


def test_validate_reports_witness_pair():
    report = validate_complete_lattice(FinitePoset(("a", "b", "1"), frozenset({("a", "1"), ("b", "1")})))
    assert not report.ok
    assert report["binary-meets"].witnesses == (["a", "b"],)
    assert report["bottom"].status == "fail"
    assert "binary" in report["binary-meets"].detail


def test_validate_valid_cases(example_lattice):
    assert validate_complete_lattice(FinitePoset(("0", "1"), frozenset({("0", "1")}))).ok
    assert validate_complete_lattice(example_lattice.poset).ok


def test_example_exhaustive_binary_scan(example_lattice):
    leq = order_from_xi(EXAMPLE_ELEMENTS, EXAMPLE_XI)
    for a, b in combinations(EXAMPLE_ELEMENTS, 2):
        assert example_lattice.meet(a, b) == brute_meet(EXAMPLE_ELEMENTS, leq, {a, b})
        assert example_lattice.join(a, b) == brute_join(EXAMPLE_ELEMENTS, leq, {a, b})


def test_poset_closes_reflexively_and_transitively():
    poset = FinitePoset(("a", "b", "c"), frozenset({("a", "b"), ("b", "c")}))
    assert poset.le("a", "c") and poset.le("b", "b")
    assert not poset.le("c", "a")


# random lattices: intersection-closed families ordered by inclusion
@st.composite
def closure_lattices(draw, max_states=4):
    n = draw(st.integers(1, max_states))
    full = (1 << n) - 1
    family = {0, full} | set(draw(st.lists(st.integers(0, full), max_size=6)))
    changed = True
    while changed:
        changed = False
        for a in list(family):
            for b in list(family):
                if a & b not in family:
                    family.add(a & b)
                    changed = True
    family = sorted(family)
    if len(family) > 12:
        family = family[:1] + family[-1:]
    names = [f"x{m}" for m in family]
    leq = {(f"x{a}", f"x{b}") for a in family for b in family if a & b == a}
    return names, leq


@settings(max_examples=60, deadline=None)
@given(closure_lattices())
def test_meets_and_joins_match_brute_force_on_all_subsets(data):
    names, leq = data
    lat = build_lattice(names, leq)
    for fam in subsets(names):
        assert meet_family(lat, fam) == brute_meet(names, leq, fam)
        assert join_family(lat, fam) == brute_join(names, leq, fam)


@settings(max_examples=60, deadline=None)
@given(closure_lattices())
def test_meet_join_tables_are_semilattices(data):
    names, leq = data
    lat = build_lattice(names, leq)
    for a in names:
        assert lat.meet(a, a) == a and lat.join(a, a) == a
        for b in names:
            m = lat.meet(a, b)
            assert m == lat.meet(b, a)
            assert lat.le(m, a) and lat.le(m, b)
            assert all(lat.le(x, m) for x in names if lat.le(x, a) and lat.le(x, b))
            j = lat.join(a, b)
            assert j == lat.join(b, a)
            assert all(lat.le(j, x) for x in names if lat.le(a, x) and lat.le(b, x))
            for c in names:
                assert lat.meet(lat.meet(a, b), c) == lat.meet(a, lat.meet(b, c))
                assert lat.join(lat.join(a, b), c) == lat.join(a, lat.join(b, c))
