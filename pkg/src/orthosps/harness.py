"""Randomized verification suites.

Each suite draws seeded instances, runs one family of checks on every
instance, and returns a :class:`SuiteResult`. A failure is never tolerated:
any entry in ``failures`` points at an implementation bug.
"""

from dataclasses import dataclass, field

from .closure import ortho_closure
from .errors import TheoremViolation
from .ortho import (Orthocomplementation, OrthoSPS, build_orthocomplementation, check_axioms,
                    compute_perp_star, ortho_from_orthocomplementation, validate_orthocomplementation,
                    validate_property_ortho, verify_double_star, verify_maximality, verify_theorem1)
from .randgen import (make_rng, orthocomplementations, random_closure_space, random_osps,
                      random_sps, random_state_ortho, random_sub_relation, relabel_sps, state_names)
from .report import Check
from .sps import eigenclosure, sps_from_closure, sps_isomorphic, validate_sps


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    qualifying: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def fail(self, index, message):
        self.failures.append({"instance": index, "error": message})

    def to_check(self):
        detail = f"{self.instances} instances, {self.qualifying} qualifying"
        return Check.of(self.name, self.failures[:5], detail)


def theorem1_suite(count, seed, max_states=5, max_props=8):
    """Theorem 1 biconditional and anti-reflexivity of the induced relation."""
    res = SuiteResult("theorem1")
    both = 0
    for i in range(count):
        rng = make_rng(seed, i)
        osps = random_osps(rng, max_states, max_props)
        res.instances += 1
        if not validate_property_ortho(osps.sps, osps.rel).ok:
            res.fail(i, "generator produced an invalid relation")
            continue
        try:
            report = verify_theorem1(osps)
        except TheoremViolation as exc:
            res.fail(i, str(exc))
            continue
        res.qualifying += 1
        both += report.details["AO1"] and report.details["AO2"]
        if report.violation:
            res.fail(i, report.witnesses)
    res.stats["ao1_and_ao2"] = both
    return res


def anti_reflexive_suite(count, seed, max_states=5, max_props=8):
    res = SuiteResult("anti-reflexive")
    for i in range(count):
        osps = random_osps(make_rng(seed, i), max_states, max_props)
        res.instances += 1
        try:
            perp = osps.state_ortho
        except TheoremViolation as exc:
            res.fail(i, str(exc))
            continue
        res.qualifying += 1
        for p in osps.sps.states:
            if (perp.adj[perp.index[p]] >> perp.index[p]) & 1:
                res.fail(i, f"{p} perp {p}")
    return res


def closure_roundtrip_suite(count, seed, max_states=6):
    """eigenclosure(sps_from_closure(C)) == C for random closure spaces."""
    res = SuiteResult("closure-roundtrip")
    for i in range(count):
        rng = make_rng(seed, i)
        space = random_closure_space(rng, rng.randint(1, max_states))
        res.instances += 1
        res.qualifying += 1
        sps = sps_from_closure(space)
        if not validate_sps(sps).ok:
            res.fail(i, "sps_from_closure produced an invalid SPS")
        elif eigenclosure(sps).space != space:
            res.fail(i, "eigenclosure does not return the closure space")
    return res


def sps_roundtrip_suite(count, seed, max_states=6, max_props=10):
    """sps_from_closure(eigenclosure(S)) is isomorphic to S."""
    res = SuiteResult("sps-roundtrip")
    for i in range(count):
        rng = make_rng(seed, i)
        sps = relabel_sps(rng, random_sps(rng, max_states, max_props))
        res.instances += 1
        if not validate_sps(sps).ok:
            res.fail(i, "generator produced an invalid SPS")
            continue
        res.qualifying += 1
        if not sps_isomorphic(sps_from_closure(eigenclosure(sps).space), sps):
            res.fail(i, "reverse roundtrip is not isomorphic")
    return res


def _random_orthocomplemented(rng, max_states, max_props):
    """An SPS with an orthocomplementation that was not built from AO1/AO2.

    Either the orthoclosure of a random state relation with ``A -> A^perp``,
    or a random SPS with an orthocomplementation found by exhaustive search.
    """
    n = rng.randint(1, max_states)
    if rng.random() < 0.5:
        states = state_names(n)
        perp = random_state_ortho(rng, states)
        space = ortho_closure(perp)
        if len(space.closed_sets) > max_props:
            return None
        sps = sps_from_closure(space)
        lat = sps.lattice
        by_kappa = {m: a for a, m in zip(lat.elements, sps.kappa_masks)}
        oc = {a: by_kappa[perp.perp_mask(m)] for a, m in zip(lat.elements, sps.kappa_masks)}
        return sps, Orthocomplementation(oc)
    sps = relabel_sps(rng, random_sps(rng, max_states, max_props))
    options = orthocomplementations(sps.lattice)
    if not options:
        return None
    comp = rng.choice(options)
    el = sps.lattice.elements
    return sps, Orthocomplementation({el[i]: el[j] for i, j in enumerate(comp)})


def ab_roundtrip_suite(count, seed, max_states=5, max_props=8):
    """build_orthocomplementation(ortho_from_orthocomplementation(S, ')) == '."""
    res = SuiteResult("ab-roundtrip")
    for i in range(count):
        rng = make_rng(seed, i)
        drawn = _random_orthocomplemented(rng, max_states, max_props)
        res.instances += 1
        if drawn is None:
            continue
        sps, oc = drawn
        if not validate_orthocomplementation(sps, oc).ok:
            res.fail(i, "drawn map is not an orthocomplementation")
            continue
        res.qualifying += 1
        osps = OrthoSPS(sps, ortho_from_orthocomplementation(sps, oc))
        if not validate_property_ortho(sps, osps.rel).ok:
            res.fail(i, "induced relation violates the relation laws")
            continue
        axioms = check_axioms(osps)
        if not axioms.both_hold:
            res.fail(i, f"AO1/AO2 fail: {axioms.witnesses}")
            continue
        if build_orthocomplementation(osps) != oc:
            res.fail(i, "orthocomplementation not reproduced")
    return res


def biorthogonal_suite(count, seed, max_states=6):
    """A within A^perp^perp and A^perp^perp^perp == A^perp for every subset."""
    res = SuiteResult("biorthogonal-laws")
    for i in range(count):
        rng = make_rng(seed, i)
        states = state_names(rng.randint(1, max_states))
        perp = random_state_ortho(rng, states)
        res.instances += 1
        res.qualifying += 1
        full = (1 << len(states)) - 1
        for a in range(full + 1):
            p1 = perp.perp_mask(a)
            p2 = perp.perp_mask(p1)
            if a & p2 != a or perp.perp_mask(p2) != p1:
                res.fail(i, f"law fails at subset mask {a}")
                break
    return res


def maximality_suite(count, seed, max_states=5, max_props=8, samples=3):
    """Containment in perp*, the perp* fixed point, and containment of sampled
    sub-relations sharing the orthocomplementation."""
    res = SuiteResult("maximality")
    sampled = 0
    for i in range(count):
        rng = make_rng(seed, i)
        osps = random_osps(rng, max_states, max_props)
        res.instances += 1
        if not check_axioms(osps).both_hold:
            continue
        res.qualifying += 1
        star = compute_perp_star(osps)
        if not osps.rel <= star:
            res.fail(i, "relation not contained in perp*")
        if compute_perp_star(OrthoSPS(osps.sps, star)) != star:
            res.fail(i, "perp* is not a fixed point")
        if verify_maximality(osps, star).violation:
            res.fail(i, "perp* not maximal over itself")
        for _ in range(samples):
            cand = random_sub_relation(rng, osps.lattice, star)
            report = verify_maximality(osps, cand)
            if report.precondition:
                sampled += 1
                if report.violation:
                    res.fail(i, report.witnesses)
    res.stats["sampled_candidates"] = sampled
    return res


def double_star_suite(count, seed, max_states=5, max_props=8):
    res = SuiteResult("double-star")
    for i in range(count):
        osps = random_osps(make_rng(seed, i), max_states, max_props)
        res.instances += 1
        report = verify_double_star(osps)
        if not report.precondition:
            continue
        res.qualifying += 1
        if report.violation:
            res.fail(i, report.witnesses)
    return res


SUITES = (theorem1_suite, anti_reflexive_suite, closure_roundtrip_suite, sps_roundtrip_suite,
          ab_roundtrip_suite, biorthogonal_suite, maximality_suite, double_star_suite)


def run_all(count, seed, max_states=5, max_props=8):
    out = []
    for suite in SUITES:
        if suite in (closure_roundtrip_suite, biorthogonal_suite):
            out.append(suite(count, seed, max_states))
        else:
            out.append(suite(count, seed, max_states, max_props))
    return out
