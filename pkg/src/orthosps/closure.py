"""Closure spaces and the biorthogonal construction."""

from dataclasses import dataclass
from functools import cached_property

from . import kernels
from ._util import bits, canonical, mask_of, names_of, set_key
from .errors import UnknownStateError
from .order import check_size
from .report import Check, ValidationReport


def _state_index(states):
    return {p: i for i, p in enumerate(states)}


@dataclass(frozen=True)
class ClosureSpace:
    """A finite state set with a family of closed subsets.

    No validation happens here; use :func:`validate_closure_space`.
    """

    states: tuple
    closed_sets: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", canonical(self.states))
        object.__setattr__(self, "closed_sets", frozenset(frozenset(c) for c in self.closed_sets))

    @cached_property
    def index(self):
        return _state_index(self.states)

    @cached_property
    def masks(self):
        """Closed sets as bitmasks, sorted."""
        return tuple(sorted(self.mask(c) for c in self.closed_sets))

    def mask(self, names):
        return mask_of(names, self.index, UnknownStateError)

    def names(self, mask):
        return names_of(mask, self.states)

    def sorted_sets(self):
        """Closed sets as name lists, ordered by size then members."""
        return sorted((self.names(self.mask(c)) for c in self.closed_sets), key=set_key)


def validate_closure_space(states, family):
    """Check that ``family`` contains the empty set and all of ``states`` and is
    intersection-stable.

    Pairwise intersections suffice for a finite family once the full set is
    present (the empty intersection).
    """
    space = ClosureSpace(tuple(states), frozenset(frozenset(c) for c in family))
    full = (1 << len(space.states)) - 1
    masks = set(space.masks)
    ordered = space.masks
    bad = []
    for x, a in enumerate(ordered):
        for b in ordered[x + 1:]:
            if a & b not in masks:
                bad.append([space.names(a), space.names(b), space.names(a & b)])
    return ValidationReport((
        Check.of("contains-empty", [] if 0 in masks else [[]]),
        Check.of("contains-states", [] if full in masks else [space.names(full)]),
        Check.of("intersection-closed", bad, "pairwise intersections"),
    ))


def closure_of(space, subset):
    """Smallest closed set containing ``subset``."""
    a = space.mask(subset)
    out = (1 << len(space.states)) - 1
    for c in space.masks:
        if a & c == a:
            out &= c
    return frozenset(space.names(out))


class StateOrthoRelation:
    """Anti-reflexive symmetric relation on a finite state set.

    Pairs are stored unordered, so symmetry holds by construction.
    """

    def __init__(self, states, pairs=()):
        self.states = canonical(states)
        self.index = _state_index(self.states)
        n = len(self.states)
        adj = [0] * n
        stored = set()
        for pair in pairs:
            p, q = tuple(pair) if len(pair) == 2 else (None, None)
            if p is None:
                raise ValueError(f"state pair must have two members: {pair!r}")
            if p == q:
                raise ValueError(f"orthogonality is anti-reflexive; got ({p!r}, {p!r})")
            for x in (p, q):
                if x not in self.index:
                    raise UnknownStateError(f"unknown state {x!r}", witness=x)
            i, j = self.index[p], self.index[q]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
            stored.add(frozenset((p, q)))
        self.adj = tuple(adj)
        self.pairs = frozenset(stored)

    @classmethod
    def from_adjacency(cls, states, adj):
        states = canonical(states)
        return cls(states, [(states[i], states[j]) for i, r in enumerate(adj) for j in bits(r)])

    def __contains__(self, pair):
        p, q = pair
        return frozenset((p, q)) in self.pairs

    def __eq__(self, other):
        return (isinstance(other, StateOrthoRelation) and self.states == other.states
                and self.pairs == other.pairs)

    def __hash__(self):
        return hash((self.states, self.pairs))

    def __len__(self):
        return len(self.pairs)

    def mask(self, names):
        return mask_of(names, self.index, UnknownStateError)

    def perp_mask(self, a):
        out = (1 << len(self.states)) - 1
        for q in bits(a):
            out &= self.adj[q]
        return out

    def sorted_pairs(self):
        return sorted((sorted(pr, key=lambda x: self.index[x]) for pr in self.pairs),
                      key=lambda pr: (self.index[pr[0]], self.index[pr[1]]))

    def __repr__(self):
        return f"StateOrthoRelation({list(self.states)!r}, {self.sorted_pairs()!r})"


def perp_set(rel, subset):
    """States orthogonal to every member of ``subset``; the empty set gives all."""
    return frozenset(names_of(rel.perp_mask(rel.mask(subset)), rel.states))


def ortho_closure(rel):
    """The orthoclosure ``{A^perp^perp | A subset of states}``."""
    n = len(rel.states)
    check_size(n, "state set")
    family = kernels.biorthogonal_family(list(rel.adj), n)
    return ClosureSpace(rel.states, frozenset(frozenset(names_of(m, rel.states)) for m in family))


def is_induced_by_ortho(space, rel):
    """True (as a truthy report) iff the closed sets are exactly the orthoclosure
    of ``rel``; witnesses list the symmetric difference."""
    if space.states != rel.states:
        raise UnknownStateError("closure space and relation have different state sets",
                                witness=[list(space.states), list(rel.states)])
    orth = ortho_closure(rel)
    only_space = sorted((space.names(space.mask(c)) for c in space.closed_sets - orth.closed_sets),
                        key=set_key)
    only_orth = sorted((orth.names(orth.mask(c)) for c in orth.closed_sets - space.closed_sets),
                       key=set_key)
    return ValidationReport((
        Check.of("closed-not-biorthogonal", only_space),
        Check.of("biorthogonal-not-closed", only_orth),
    ))
