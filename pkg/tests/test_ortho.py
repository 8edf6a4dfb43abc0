import random

import pytest

from conftest import EXAMPLE_ELEMENTS, EXAMPLE_XI
from oracles import (brute_meet, def6_partner, family_law_violations, induced_state_pairs, kappa,
                     order_from_xi, perp)
from orthosps import (AxiomPreconditionError, Orthocomplementation, OrthoSPS,
                      PropertyOrthoRelation, StateOrthoRelation, TheoremViolation,
                      build_orthocomplementation, check_AO1, check_AO2, check_axioms,
                      compute_perp_star, induce_property_ortho, induce_state_ortho,
                      ortho_from_orthocomplementation, orthoproperty_partner,
                      validate_orthocomplementation, validate_property_ortho, verify_double_star,
                      verify_maximality, verify_theorem1)
from orthosps.randgen import random_sub_relation

LISTED_ADDED = {(3, 2), (2, 3), (4, 3), (3, 4), (3, 5), (2, 7), (2, 6), (7, 2), (6, 2), (2, 9),
               (9, 2), (5, 3), (3, 8), (8, 3)}
EXAMPLE_PERP = {frozenset(p) for p in ("pq", "ps", "pu", "qr", "qt", "ru", "st")}
COMPLEMENT = {"1": "10", "2": "9", "3": "8", "4": "6", "5": "7"}
COMPLEMENT.update({v: k for k, v in COMPLEMENT.items()})
A_P = {"p": "8", "q": "9", "r": "4", "s": "7", "t": "5", "u": "6"}


def example_rel_pairs():
    bottom = {("1", x) for x in EXAMPLE_ELEMENTS} | {(x, "1") for x in EXAMPLE_ELEMENTS}
    return bottom | {("7", "5"), ("5", "7"), ("4", "6"), ("6", "4")}


def test_example_relation_laws(example):
    assert example.rel.pairs == example_rel_pairs()
    assert validate_property_ortho(example.sps, example.rel).ok
    leq = order_from_xi(EXAMPLE_ELEMENTS, EXAMPLE_XI)
    assert family_law_violations(EXAMPLE_ELEMENTS, leq, example.rel.pairs) == []


def test_example_induced_state_ortho(example):
    got = {frozenset(p) for p in example.state_ortho.pairs}
    assert got == EXAMPLE_PERP
    assert got == induced_state_pairs(EXAMPLE_XI, example_rel_pairs())


def test_example_orthoproperties_match_definition(example):
    for a in EXAMPLE_ELEMENTS:
        assert def6_partner(EXAMPLE_ELEMENTS, EXAMPLE_XI, EXAMPLE_PERP, a) == [COMPLEMENT[a]]
        assert orthoproperty_partner(example, a) == COMPLEMENT[a]


def test_example_axioms(example):
    rep = check_axioms(example)
    assert rep.ao1_holds and rep.ao2_holds and rep.both_hold
    assert sorted(rep.generating_set) == sorted(EXAMPLE_ELEMENTS)
    assert rep.a_p_map == A_P
    for p, a in A_P.items():
        assert kappa(EXAMPLE_XI, a) == perp(list(EXAMPLE_XI), EXAMPLE_PERP, {p})


def test_example_orthocomplementation(example):
    oc = build_orthocomplementation(example)
    assert oc.map == COMPLEMENT
    assert oc.per_state == A_P
    assert validate_orthocomplementation(example.sps, oc).ok
    leq = order_from_xi(EXAMPLE_ELEMENTS, EXAMPLE_XI)
    for a in EXAMPLE_ELEMENTS:
        fam = {A_P[p] for p in EXAMPLE_XI if a in EXAMPLE_XI[p]}
        assert brute_meet(EXAMPLE_ELEMENTS, leq, fam) == oc(a)


def test_example_perp_star(example):
    star = compute_perp_star(example)
    added = {(int(a), int(b)) for a, b in star.pairs - example.rel.pairs}
    assert added == LISTED_ADDED
    assert star.pairs == example.rel.pairs | {(str(a), str(b)) for a, b in LISTED_ADDED}
    assert len(star) == 37
    assert ("2", "3") in star and ("2", "3") not in example.rel
    assert validate_property_ortho(example.sps, star).ok


def test_example_theorems(example):
    t1 = verify_theorem1(example)
    assert t1.holds and t1.details["closures_equal"]
    assert t1.details["eigenclosure_size"] == t1.details["orthoclosure_size"] == 10
    ds = verify_double_star(example)
    assert ds.holds and ds.details["pairs_checked"] == 100
    assert verify_maximality(example, example.rel).holds
    assert verify_maximality(example, compute_perp_star(example)).holds


def test_induced_perp_fed_back_gives_perp_star(example):
    rel = induce_property_ortho(example.sps, example.state_ortho)
    assert rel == compute_perp_star(example)


def test_perp_star_fixed_point(example):
    star = compute_perp_star(example)
    assert compute_perp_star(OrthoSPS(example.sps, star)) == star


def test_sampled_sub_relations_are_contained(example):
    star = compute_perp_star(example)
    oc = build_orthocomplementation(example)
    rng = random.Random(11)
    kept = 0
    for _ in range(200):
        sub = random_sub_relation(rng, example.lattice, star)
        cand = OrthoSPS(example.sps, sub)
        if check_axioms(cand).both_hold and build_orthocomplementation(cand) == oc:
            kept += 1
            assert sub <= star
            assert verify_maximality(example, sub).holds
    assert kept > 0


def test_triv2(triv2):
    assert len(triv2.state_ortho) == 0
    rep = check_axioms(triv2)
    assert rep.both_hold and rep.a_p_map == {"p": "0", "q": "0"}
    oc = build_orthocomplementation(triv2)
    assert oc.map == {"0": "1", "1": "0"}
    assert compute_perp_star(triv2).pairs == {("0", "0"), ("0", "1"), ("1", "0")}
    assert compute_perp_star(triv2) == triv2.rel


def test_diamond(diamond):
    assert {frozenset(p) for p in diamond.state_ortho.pairs} == {frozenset("pq")}
    assert build_orthocomplementation(diamond).map == {"0": "1", "1": "0", "a": "b", "b": "a"}
    assert verify_theorem1(diamond).holds


def test_chain3_fails_ao1_only(chain3):
    rep = check_axioms(chain3)
    assert rep.ao1_holds is False and rep.witnesses["AO1"] == ["a"]
    assert rep.ao2_holds
    t1 = verify_theorem1(chain3)
    assert t1.holds and not t1.details["closures_equal"]
    with pytest.raises(AxiomPreconditionError) as err:
        build_orthocomplementation(chain3)
    assert err.value.code == "E-PRE-AXIOMS"
    ds = verify_double_star(chain3)
    assert not ds.precondition and ds.to_check().status == "skip"


def test_m3_fails_ao2(m3):
    rep = check_AO2(m3)
    assert rep.ao2_holds is False and rep.witnesses["AO2"] == ["p"]
    assert verify_theorem1(m3).holds


def test_relation_law_witnesses(diamond):
    lat = diamond.lattice
    asym = PropertyOrthoRelation([("a", "b")] + [("0", x) for x in lat.elements]
                                 + [(x, "0") for x in lat.elements])
    rep = validate_property_ortho(diamond.sps, asym)
    assert rep["symmetry"].witnesses == (["a", "b"],)
    overlap = PropertyOrthoRelation.closed(lat, [("a", "1")], include_bottom=True)
    assert ["a", "1"] in validate_property_ortho(diamond.sps, overlap)["disjointness"].witnesses
    nobottom = PropertyOrthoRelation.closed(lat, [("a", "b")])
    assert validate_property_ortho(diamond.sps, nobottom)["bottom-orthogonal"].witnesses == (
        "0", "1", "a", "b")


def test_family_law_witness_example(example):
    # 6 ^ 7 = 3, so keeping 2 against 6 and 7 but dropping (2, 3) breaks the law
    star = compute_perp_star(example)
    broken = PropertyOrthoRelation(star.pairs - {("2", "3"), ("3", "2")})
    rep = validate_property_ortho(example.sps, broken)
    assert rep["symmetry"].passed and rep["disjointness"].passed
    assert rep["family-law"].witnesses == ([["2"], ["6", "7"], "2", "3"],)
    leq = order_from_xi(EXAMPLE_ELEMENTS, EXAMPLE_XI)
    assert family_law_violations(EXAMPLE_ELEMENTS, leq, broken.pairs)


def test_reflexive_induced_ortho_raises(diamond):
    bad = PropertyOrthoRelation.closed(diamond.lattice, [("a", "a")], include_bottom=True)
    with pytest.raises(TheoremViolation):
        induce_state_ortho(OrthoSPS(diamond.sps, bad))


def test_identity_map_fails_meet_zero(diamond):
    ident = Orthocomplementation({x: x for x in diamond.lattice.elements})
    rep = validate_orthocomplementation(diamond.sps, ident)
    assert not rep["meet-zero"].passed
    assert ["1", "1"] in rep["meet-zero"].witnesses


def test_partial_map_fails_total(diamond):
    rep = validate_orthocomplementation(diamond.sps, Orthocomplementation({"0": "1"}))
    assert rep["total"].witnesses == ("1", "a", "b")
    assert rep["involution"].status == "skip"


def test_chain_swap_relation(triv2):
    oc = Orthocomplementation({"0": "1", "1": "0"})
    rel = ortho_from_orthocomplementation(triv2.sps, oc)
    assert rel.pairs == {("0", "0"), ("0", "1"), ("1", "0")}


def test_ab_roundtrip_example(example):
    oc = build_orthocomplementation(example)
    rel = ortho_from_orthocomplementation(example.sps, oc)
    assert build_orthocomplementation(OrthoSPS(example.sps, rel)) == oc


def test_induce_property_ortho_rejects_other_states(example):
    with pytest.raises(ValueError):
        induce_property_ortho(example.sps, StateOrthoRelation(["x", "y"]))


def test_ao1_generating_set_on_example(example):
    assert check_AO1(example).witnesses == {}
