"""Seeded random structures for property checks.

Every generator takes a :class:`random.Random`, so a fixed seed reproduces the
exact same instances.
"""

import random

from . import kernels
from ._util import bits
from .closure import ClosureSpace, StateOrthoRelation, ortho_closure
from .order import build_lattice
from .ortho import OrthoSPS, PropertyOrthoRelation, induce_property_ortho
from .sps import StatePropertySystem, sps_from_closure


def state_names(n):
    return [f"s{i}" for i in range(n)]


def _intersection_closure(family, full):
    closed = set(family) | {0, full}
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in list(closed):
                c = a & b
                if c not in closed:
                    closed.add(c)
                    new.append(c)
        frontier = new
    return closed


def random_closure_space(rng, n_states, max_sets=None, attempts=None):
    """Close random subsets under intersection, keeping at most ``max_sets``
    closed sets (``None`` for no limit)."""
    full = (1 << n_states) - 1
    closed = {0, full}
    attempts = attempts if attempts is not None else rng.randint(0, 2 * n_states + 2)
    for _ in range(attempts):
        cand = _intersection_closure(closed | {rng.randint(0, full)}, full)
        if max_sets is None or len(cand) <= max_sets:
            closed = cand
    states = state_names(n_states)
    return ClosureSpace(states, frozenset(frozenset(states[i] for i in bits(m)) for m in closed))


def _relabel(rng, sps):
    el = list(sps.lattice.elements)
    new_el = [f"e{i}" for i in range(len(el))]
    rng.shuffle(new_el)
    emap = dict(zip(el, new_el))
    new_states = [f"t{i}" for i in range(len(sps.states))]
    rng.shuffle(new_states)
    smap = dict(zip(sps.states, new_states))
    pairs = [(emap[a], emap[b]) for a, b in sps.lattice.poset.leq if a != b]
    lattice = build_lattice(new_el, pairs)
    xi = {smap[p]: [emap[a] for a in sps.xi[p]] for p in sps.states}
    return StatePropertySystem(new_states, lattice, xi), emap


def relabel_sps(rng, sps):
    """Copy of ``sps`` with shuffled state and element names."""
    return _relabel(rng, sps)[0]


def random_sps(rng, max_states, max_props):
    n = rng.randint(1, max_states)
    return sps_from_closure(random_closure_space(rng, n, max_props))


def random_state_ortho(rng, states, density=None):
    density = rng.random() if density is None else density
    pairs = [(p, q) for i, p in enumerate(states) for q in states[i + 1:] if rng.random() < density]
    return StateOrthoRelation(states, pairs)


def close_relation(lattice, rel):
    """Least symmetric relation containing ``rel`` and all bottom pairs that
    obeys the family law. Disjointness survives because meets only shrink."""
    rows = rel.rows(lattice)
    z = lattice.bottom_index
    full = (1 << len(lattice)) - 1
    rows[z] = full
    for i in range(len(rows)):
        rows[i] |= 1 << z
    rows = kernels.close_family_law(rows, list(lattice.meet_table), len(lattice), lattice.top_index)
    return PropertyOrthoRelation.from_rows(lattice, rows)


def random_sub_relation(rng, lattice, rel, keep=None):
    """Random symmetric subset of ``rel``, re-closed by :func:`close_relation`."""
    keep = rng.random() if keep is None else keep
    chosen = []
    for a, b in sorted(rel.pairs, key=lambda pr: (lattice.index(pr[0]), lattice.index(pr[1]))):
        if lattice.index(a) <= lattice.index(b) and rng.random() < keep:
            chosen.append((a, b))
    return close_relation(lattice, PropertyOrthoRelation.closed(lattice, chosen))


def random_osps(rng, max_states=5, max_props=8):
    """A valid ortho state property system.

    Half the instances start from a random state orthogonality and use its
    orthoclosure (so AO1 and AO2 hold for the induced relation, possibly
    thinned afterwards); the rest take a random closure space and a random
    sub-relation of the trivial relation.
    """
    n = rng.randint(1, max_states)
    states = state_names(n)
    if rng.random() < 0.5:
        for _ in range(50):
            perp = random_state_ortho(rng, states)
            space = ortho_closure(perp)
            if len(space.closed_sets) <= max_props:
                break
        else:
            space = ClosureSpace(states, frozenset({frozenset(), frozenset(states)}))
            perp = StateOrthoRelation(states)
        sps = sps_from_closure(space)
        rel = induce_property_ortho(sps, perp)
        if rng.random() < 0.3:
            rel = random_sub_relation(rng, sps.lattice, rel)
    else:
        sps = sps_from_closure(random_closure_space(rng, n, max_props))
        rel = random_sub_relation(rng, sps.lattice, PropertyOrthoRelation.trivial(sps.lattice))
    if rng.random() < 0.5:
        sps, rel = _relabel_with(rng, sps, rel)
    return OrthoSPS(sps, rel)


def _relabel_with(rng, sps, rel):
    new, emap = _relabel(rng, sps)
    return new, PropertyOrthoRelation((emap[a], emap[b]) for a, b in rel.pairs)


def make_rng(seed, index=0):
    """Deterministic per-instance generator."""
    return random.Random(seed * 1_000_003 + index)


def orthocomplementations(lattice, limit=None):
    """Every orthocomplementation of ``lattice`` as an index list, by
    backtracking over involutions that swap bottom and top."""
    n = len(lattice)
    z, one = lattice.bottom_index, lattice.top_index
    meet, join = lattice.meet_table, lattice.join_table
    le = lattice.le_idx
    comp = [None] * n
    comp[z], comp[one] = one, z
    found = []

    def fits(i, j):
        # i' = j (and j' = i); check complement laws and antitonicity so far
        if meet[i * n + j] != z or join[i * n + j] != one:
            return False
        for k in range(n):
            ck = comp[k]
            if ck is None:
                continue
            for x, cx in ((i, j), (j, i)):
                if le(x, k) and not le(ck, cx):
                    return False
                if le(k, x) and not le(cx, ck):
                    return False
        return True

    def search():
        if limit is not None and len(found) >= limit:
            return
        free = [i for i in range(n) if comp[i] is None]
        if not free:
            found.append(list(comp))
            return
        i = free[0]
        for j in free:
            if fits(i, j):
                comp[i], comp[j] = j, i
                search()
                comp[i] = comp[j] = None

    if n == 1 or fits(z, one):
        search()
    return found
