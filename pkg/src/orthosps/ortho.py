"""Orthogonality on state property systems.

Covers the property-level relation and its four laws, the state relation it
induces (and the converse), orthocouples, the axioms AO1/AO2, the
orthocomplementation they produce, the largest compatible relation ``perp*``,
and the checks that tie all of these to the orthoclosure.
"""

from dataclasses import dataclass, field
from functools import cached_property

from . import kernels
from ._util import bits, natural_key, set_key
from .closure import StateOrthoRelation, ortho_closure
from .errors import AxiomPreconditionError, TheoremViolation
from .order import check_size
from .report import Check, ValidationReport
from .sps import eigenclosure, set_name, sps_from_closure


def _pair_key(lattice):
    return lambda pr: (lattice.index(pr[0]), lattice.index(pr[1]))


class PropertyOrthoRelation:
    """A relation on the property lattice, stored as ordered pairs.

    The constructor keeps exactly the pairs given, so asymmetric input can be
    reported by :func:`validate_property_ortho`. Use :meth:`closed` for the
    usual symmetric form.
    """

    def __init__(self, pairs=()):
        self.pairs = frozenset((a, b) for a, b in pairs)

    @classmethod
    def closed(cls, lattice, pairs=(), include_bottom=False):
        """Symmetric closure of ``pairs``, optionally adding every ``(0, x)``."""
        out = set()
        for a, b in pairs:
            lattice.index(a)
            lattice.index(b)
            out.add((a, b))
            out.add((b, a))
        if include_bottom:
            z = lattice.bottom
            for x in lattice.elements:
                out.add((z, x))
                out.add((x, z))
        return cls(out)

    @classmethod
    def from_rows(cls, lattice, rows):
        el = lattice.elements
        return cls((el[i], el[j]) for i, r in enumerate(rows) for j in bits(r))

    @classmethod
    def trivial(cls, lattice):
        """Relate exactly the pairs whose meet is bottom."""
        z = lattice.bottom_index
        n = len(lattice)
        return cls.from_rows(lattice, [sum(1 << j for j in range(n) if lattice.meet_idx(i, j) == z)
                                       for i in range(n)])

    def rows(self, lattice):
        out = [0] * len(lattice)
        for a, b in self.pairs:
            out[lattice.index(a)] |= 1 << lattice.index(b)
        return out

    def sorted_pairs(self, lattice):
        return sorted(([a, b] for a, b in self.pairs), key=_pair_key(lattice))

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __le__(self, other):
        return self.pairs <= other.pairs

    def __lt__(self, other):
        return self.pairs < other.pairs

    def __eq__(self, other):
        return isinstance(other, PropertyOrthoRelation) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return f"PropertyOrthoRelation({sorted(self.pairs, key=lambda p: (natural_key(p[0]), natural_key(p[1])))!r})"


@dataclass(frozen=True, eq=False)
class OrthoSPS:
    sps: object
    rel: PropertyOrthoRelation

    @property
    def lattice(self):
        return self.sps.lattice

    @cached_property
    def rows(self):
        return tuple(self.rel.rows(self.sps.lattice))

    @cached_property
    def state_ortho(self):
        return induce_state_ortho(self)


@dataclass(frozen=True)
class Orthocomplementation:
    """A map ``a -> a'`` on the lattice, with the per-state ``a_p`` it came
    from when built from AO2."""

    map: dict
    per_state: dict = None

    def __call__(self, a):
        return self.map[a]

    def __eq__(self, other):
        return isinstance(other, Orthocomplementation) and self.map == other.map

    __hash__ = None


@dataclass
class AxiomReport:
    ao1_holds: bool = None
    generating_set: list = None
    ao2_holds: bool = None
    a_p_map: dict = None
    witnesses: dict = field(default_factory=dict)

    @property
    def both_hold(self):
        return bool(self.ao1_holds) and bool(self.ao2_holds)

    def to_checks(self):
        out = []
        if self.ao1_holds is not None:
            out.append(Check.of("AO1", self.witnesses.get("AO1", []),
                                f"{len(self.generating_set or [])} orthoproperties"))
        if self.ao2_holds is not None:
            out.append(Check.of("AO2", self.witnesses.get("AO2", [])))
        return out


@dataclass
class TheoremReport:
    """Outcome of a machine-checked theorem on one instance.

    ``precondition`` False means the theorem did not apply (reported as a
    skip). ``holds`` False with the precondition met is a theorem violation,
    which always points at an implementation bug.
    """

    name: str
    holds: bool
    precondition: bool = True
    details: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def violation(self):
        return self.precondition and not self.holds

    def to_check(self):
        if not self.precondition:
            return Check(self.name, "skip", (), AxiomPreconditionError.code)
        if self.holds:
            return Check(self.name, "pass")
        return Check(self.name, "fail", tuple(self.witnesses), TheoremViolation.code)

    def raise_for_violation(self):
        if self.violation:
            raise TheoremViolation(f"{self.name} fails", witness=self.witnesses)
        return self


def validate_property_ortho(sps, rel):
    """Check symmetry, disjointness (``a ^ b = 0``), bottom-totality and the
    family law (nonempty ``A``, ``B`` with ``A x B`` related force
    ``meet A`` related to ``meet B``)."""
    lat = sps.lattice
    n = len(lat)
    check_size(n, "property lattice")
    rows = rel.rows(lat)
    el = lat.elements
    z = lat.bottom_index

    asym, overlap = [], []
    for i in range(n):
        for j in bits(rows[i]):
            if not (rows[j] >> i) & 1:
                asym.append([el[i], el[j]])
            if lat.meet_idx(i, j) != z:
                overlap.append([el[i], el[j]])
    missing_bottom = [el[j] for j in range(n)
                      if not ((rows[z] >> j) & 1 and (rows[j] >> z) & 1)]
    hit = kernels.family_law_witness(rows, list(lat.meet_table), n, lat.top_index)
    family = []
    if hit is not None:
        a, b = hit
        family.append([lat.names(a), lat.names(b),
                       el[lat.meet_of_mask(a)], el[lat.meet_of_mask(b)]])
    return ValidationReport((
        Check.of("symmetry", asym),
        Check.of("disjointness", overlap),
        Check.of("bottom-orthogonal", missing_bottom),
        Check.of("family-law", family, "all nonempty subset pairs"),
    ))


def induce_state_ortho(osps):
    """``p perp q`` iff some related ``a, b`` have ``a`` actual in ``p`` and
    ``b`` actual in ``q``."""
    sps = osps.sps
    kappa = sps.kappa_masks
    adj = [0] * len(sps.states)
    for i, r in enumerate(osps.rows):
        if not kappa[i] or not r:
            continue
        image = 0
        for j in bits(r):
            image |= kappa[j]
        for p in bits(kappa[i]):
            adj[p] |= image
    for p, r in enumerate(adj):
        if (r >> p) & 1:
            raise TheoremViolation(f"induced orthogonality is reflexive at {sps.states[p]!r}; "
                                   "the property relation or the SPS is invalid",
                                   witness=sps.states[p])
    # the relation is symmetric when rel is; close anyway so asymmetric input
    # still yields a well-formed state relation
    return StateOrthoRelation.from_adjacency(sps.states, adj)


def _state_adj(sps, state_rel):
    if state_rel.states != sps.states:
        raise ValueError("state relation is over a different state set")
    return state_rel.adj


def induce_property_ortho(sps, state_rel):
    """``a perp b`` iff every state making ``a`` actual is orthogonal to every
    state making ``b`` actual."""
    adj = _state_adj(sps, state_rel)
    kappa = sps.kappa_masks
    n_states = len(sps.states)
    perps = []
    for km in kappa:
        out = (1 << n_states) - 1
        for p in bits(km):
            out &= adj[p]
        perps.append(out)
    n = len(sps.lattice)
    rows = [sum(1 << j for j in range(n) if kappa[j] & perps[i] == kappa[j]) for i in range(n)]
    return PropertyOrthoRelation.from_rows(sps.lattice, rows)


def _perp(adj, mask, full):
    out = full
    for p in bits(mask):
        out &= adj[p]
    return out


def _partner_idx(sps, adj, i):
    full = (1 << len(sps.states)) - 1
    km = sps.kappa_masks[i]
    perp = _perp(adj, km, full)
    if _perp(adj, perp, full) != km:
        return None
    matches = [j for j, m in enumerate(sps.kappa_masks) if m == perp]
    if len(matches) > 1:
        raise TheoremViolation("orthocouple partner is not unique",
                               witness=[sps.lattice.elements[j] for j in matches])
    return matches[0] if matches else None


def orthoproperty_partner(osps, a):
    """The unique ``b`` forming an orthocouple with ``a``, or ``None``.

    ``a`` is an orthoproperty iff its Cartan image is biorthogonally closed and
    its annihilator is again a Cartan image, which is then the image of ``b``.
    """
    lat = osps.lattice
    i = lat.index(a)
    j = _partner_idx(osps.sps, osps.state_ortho.adj, i)
    return None if j is None else lat.elements[j]


def check_AO1(osps):
    """AO1: the orthoproperties generate the lattice under meets.

    The generating set reported is the set of all orthoproperties.
    """
    lat = osps.lattice
    n = len(lat)
    check_size(n, "property lattice")
    adj = osps.state_ortho.adj
    t_mask = 0
    for i in range(n):
        if _partner_idx(osps.sps, adj, i) is not None:
            t_mask |= 1 << i
    generated = kernels.meet_closure(t_mask, list(lat.meet_table), n) | (1 << lat.top_index)
    missing = lat.names(((1 << n) - 1) & ~generated)
    return AxiomReport(ao1_holds=not missing, generating_set=lat.names(t_mask),
                       witnesses={"AO1": missing} if missing else {})


def check_AO2(osps):
    """AO2: every state's annihilator ``{p}^perp`` is the Cartan image of some
    property ``a_p``."""
    sps = osps.sps
    lat = sps.lattice
    adj = osps.state_ortho.adj
    a_p, missing = {}, []
    for s, p in enumerate(sps.states):
        matches = [j for j, m in enumerate(sps.kappa_masks) if m == adj[s]]
        if len(matches) > 1:
            raise TheoremViolation(f"a_p is not unique for state {p!r}",
                                   witness=[lat.elements[j] for j in matches])
        if matches:
            a_p[p] = lat.elements[matches[0]]
        else:
            missing.append(p)
    return AxiomReport(ao2_holds=not missing, a_p_map=a_p if not missing else None,
                       witnesses={"AO2": missing} if missing else {})


def check_axioms(osps):
    one, two = check_AO1(osps), check_AO2(osps)
    return AxiomReport(one.ao1_holds, one.generating_set, two.ao2_holds, two.a_p_map,
                       {**one.witnesses, **two.witnesses})


def _require_axioms(osps):
    report = check_axioms(osps)
    if not report.both_hold:
        raise AxiomPreconditionError("AO1 and AO2 must both hold", witness=report.witnesses)
    return report


def build_orthocomplementation(osps):
    """``a' = meet of a_p over the states p where a is actual`` (top when a is
    never actual)."""
    report = _require_axioms(osps)
    sps = osps.sps
    lat = sps.lattice
    a_p_idx = [lat.index(report.a_p_map[p]) for p in sps.states]
    out = {}
    for i, a in enumerate(lat.elements):
        m = lat.top_index
        for s in bits(sps.kappa_masks[i]):
            m = lat.meet_idx(m, a_p_idx[s])
        out[a] = lat.elements[m]
    return Orthocomplementation(out, dict(report.a_p_map))


def validate_orthocomplementation(sps, oc):
    """Involution, antitonicity, ``a ^ a' = 0`` and ``a v a' = 1``."""
    lat = sps.lattice
    el = lat.elements
    missing = [a for a in el if a not in oc.map]
    stray = sorted((a for a in oc.map if a not in lat.poset._index), key=natural_key)
    stray += sorted({b for b in oc.map.values() if b not in lat.poset._index}, key=natural_key)
    total = Check.of("total", missing + stray)
    if not total.passed:
        skip = lambda name: Check(name, "skip", (), "map is not total on the lattice")
        return ValidationReport((total, skip("involution"), skip("antitone"),
                                 skip("meet-zero"), skip("join-one")))
    c = [lat.index(oc.map[a]) for a in el]
    n = len(el)
    z, one = lat.bottom_index, lat.top_index
    invol = [[el[i], el[c[i]], el[c[c[i]]]] for i in range(n) if c[c[i]] != i]
    anti = [[el[i], el[j]] for i in range(n) for j in range(n)
            if i != j and lat.le_idx(i, j) and not lat.le_idx(c[j], c[i])]
    mz = [[el[i], el[lat.meet_idx(i, c[i])]] for i in range(n) if lat.meet_idx(i, c[i]) != z]
    jo = [[el[i], el[lat.join_table[i * n + c[i]]]] for i in range(n)
          if lat.join_table[i * n + c[i]] != one]
    return ValidationReport((
        total,
        Check.of("involution", invol),
        Check.of("antitone", anti),
        Check.of("meet-zero", mz),
        Check.of("join-one", jo),
    ))


def ortho_from_orthocomplementation(sps, oc):
    """``a perp b`` iff ``b <= a'``."""
    lat = sps.lattice
    rows = [lat.down_masks[lat.index(oc.map[a])] for a in lat.elements]
    return PropertyOrthoRelation.from_rows(lat, rows)


def compute_perp_star(osps):
    """The largest relation with the same orthocomplementation as ``osps``."""
    return ortho_from_orthocomplementation(osps.sps, build_orthocomplementation(osps))


def verify_theorem1(osps):
    """Eigenclosure equals orthoclosure iff AO1 and AO2 hold.

    Both sides are computed independently; disagreement is a violation.
    """
    sps = osps.sps
    eig = eigenclosure(sps).space
    orth = ortho_closure(osps.state_ortho)
    lhs = eig.closed_sets == orth.closed_sets
    axioms = check_axioms(osps)
    rhs = axioms.both_hold
    details = {
        "closures_equal": lhs,
        "AO1": axioms.ao1_holds,
        "AO2": axioms.ao2_holds,
        "eigenclosure_size": len(eig.closed_sets),
        "orthoclosure_size": len(orth.closed_sets),
    }
    witnesses = []
    if lhs != rhs:
        witnesses = [
            {"eigen_only": sorted((eig.names(eig.mask(c)) for c in eig.closed_sets - orth.closed_sets),
                                  key=set_key),
             "orth_only": sorted((orth.names(orth.mask(c)) for c in orth.closed_sets - eig.closed_sets),
                                 key=set_key),
             "axioms": axioms.witnesses},
        ]
    return TheoremReport("theorem1", lhs == rhs, True, details, witnesses)


def verify_double_star(osps):
    """``kappa(a) perp** kappa(b)`` iff ``a perp* b`` over all element pairs.

    ``perp**`` lives on the closure-side system built from the eigenclosure
    and is induced by the state orthogonality of ``osps``.
    """
    if not check_axioms(osps).both_hold:
        return TheoremReport("double-star", False, precondition=False)
    sps = osps.sps
    star = compute_perp_star(osps)
    space = eigenclosure(sps).space
    closure_sps = sps_from_closure(space)
    double = induce_property_ortho(closure_sps, StateOrthoRelation(
        closure_sps.states, osps.state_ortho.pairs))
    names = [set_name(sps.state_names(m)) for m in sps.kappa_masks]
    el = sps.lattice.elements
    mismatches = []
    for i, a in enumerate(el):
        for j, b in enumerate(el):
            if ((names[i], names[j]) in double) != ((a, b) in star):
                mismatches.append([a, b])
    return TheoremReport("double-star", not mismatches, True,
                         {"pairs_checked": len(el) ** 2}, mismatches)


def verify_maximality(osps, candidate):
    """A candidate relation giving an AO1/AO2 system with the same
    orthocomplementation must lie inside ``perp*``."""
    star = compute_perp_star(osps)
    oc = build_orthocomplementation(osps)
    cand = OrthoSPS(osps.sps, candidate)
    reasons = []
    if not validate_property_ortho(osps.sps, candidate).ok:
        reasons.append("candidate violates the relation laws")
    elif not check_axioms(cand).both_hold:
        reasons.append("candidate fails AO1 or AO2")
    elif build_orthocomplementation(cand) != oc:
        reasons.append("candidate induces a different orthocomplementation")
    if reasons:
        return TheoremReport("maximality", False, precondition=False,
                             details={"reason": reasons[0]})
    lat = osps.lattice
    extra = sorted(([a, b] for a, b in candidate.pairs - star.pairs), key=_pair_key(lat))
    return TheoremReport("maximality", not extra, True,
                         {"candidate_size": len(candidate), "perp_star_size": len(star)}, extra)
