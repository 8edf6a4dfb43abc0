"""State property systems, the Cartan map, and the equivalence with closure
spaces."""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from ._util import SIZE_CAP, bits, canonical, names_of
from .closure import ClosureSpace
from .errors import SizeCapError, UnknownStateError
from .order import build_lattice
from .report import Check, ValidationReport

# beyond this many actual properties SPS2 is checked pairwise instead of per subfamily
SPS2_EXHAUSTIVE_CAP = 12


class StatePropertySystem:
    """States, a property lattice, and the map ``xi`` sending each state to the
    set of its actual properties.

    Construction resolves names only. The axioms are checked by
    :func:`validate_sps`.
    """

    def __init__(self, states, lattice, xi):
        self.states = canonical(states)
        self.lattice = lattice
        self.state_index = {p: i for i, p in enumerate(self.states)}
        masks = []
        for p in self.states:
            if p not in xi:
                raise UnknownStateError(f"xi is not defined on state {p!r}", witness=p)
            masks.append(lattice.mask(xi[p]))
        for p in xi:
            if p not in self.state_index:
                raise UnknownStateError(f"xi names unknown state {p!r}", witness=p)
        self.xi_masks = tuple(masks)
        self.xi = {p: frozenset(lattice.names(m)) for p, m in zip(self.states, masks)}

    @cached_property
    def kappa_masks(self):
        """State mask of every element, indexed like ``lattice.elements``."""
        out = [0] * len(self.lattice)
        for s, m in enumerate(self.xi_masks):
            for a in bits(m):
                out[a] |= 1 << s
        return tuple(out)

    def state_mask(self, names):
        m = 0
        for p in names:
            try:
                m |= 1 << self.state_index[p]
            except KeyError:
                raise UnknownStateError(f"unknown state {p!r}", witness=p) from None
        return m

    def state_names(self, mask):
        return names_of(mask, self.states)

    def element_with_kappa(self, mask):
        """The element whose Cartan image is ``mask``, or ``None``."""
        return self._kappa_lookup.get(mask)

    @cached_property
    def _kappa_lookup(self):
        out = {}
        for i, m in enumerate(self.kappa_masks):
            out.setdefault(m, i)
        return out

    def __eq__(self, other):
        return (isinstance(other, StatePropertySystem) and self.states == other.states
                and self.lattice == other.lattice and self.xi == other.xi)

    def __hash__(self):
        return hash((self.states, self.lattice, tuple(self.xi_masks)))

    def __repr__(self):
        return f"StatePropertySystem({len(self.states)} states, {len(self.lattice)} properties)"


@dataclass(frozen=True)
class EigenClosureResult:
    space: ClosureSpace
    kappa: dict


def validate_sps(candidate):
    """Check SPS1 (bottom never actual), SPS2 (actual properties are
    meet-closed, including the empty meet) and SPS3 (order agrees with
    actuality)."""
    lat = candidate.lattice
    n = len(lat)
    bot, top = lat.bottom_index, lat.top_index
    sps1 = [p for p, m in zip(candidate.states, candidate.xi_masks) if (m >> bot) & 1]

    sps2 = []
    exhaustive = True
    for p, m in zip(candidate.states, candidate.xi_masks):
        if not (m >> top) & 1:
            sps2.append([p, [], lat.top])
            continue
        members = bits(m)
        if len(members) <= SPS2_EXHAUSTIVE_CAP:
            families = (c for k in range(2, len(members) + 1) for c in combinations(members, k))
        else:
            exhaustive = False
            families = combinations(members, 2)
        for fam in families:
            mm = 0
            for i in fam:
                mm |= 1 << i
            meet = lat.meet_of_mask(mm)
            if not (m >> meet) & 1:
                sps2.append([p, lat.names(mm), lat.elements[meet]])
                break

    kappa = candidate.kappa_masks
    sps3 = []
    for a in range(n):
        for b in range(n):
            ordered = lat.le_idx(a, b)
            included = kappa[a] & kappa[b] == kappa[a]
            if ordered and not included:
                sps3.append([lat.elements[a], lat.elements[b], "order-without-inclusion"])
            elif included and not ordered:
                sps3.append([lat.elements[a], lat.elements[b], "inclusion-without-order"])
    detail = ("all subfamilies" if exhaustive else "pairwise meets plus top membership")
    return ValidationReport((
        Check.of("SPS1", sps1, "empty state set, axioms hold vacuously" if not candidate.states else ""),
        Check.of("SPS2", sps2, detail),
        Check.of("SPS3", sps3),
    ))


def cartan(sps, a):
    """States in which property ``a`` is actual."""
    return frozenset(sps.state_names(sps.kappa_masks[sps.lattice.index(a)]))


def eigenclosure(sps):
    kappa = {a: frozenset(sps.state_names(m))
             for a, m in zip(sps.lattice.elements, sps.kappa_masks)}
    return EigenClosureResult(ClosureSpace(sps.states, frozenset(kappa.values())), kappa)


def set_name(names):
    """Identifier used for a closed set when it becomes a lattice element."""
    return "{" + ",".join(names) + "}"


def sps_from_closure(space):
    """Closed sets ordered by inclusion, with ``xi(p)`` the closed sets holding ``p``.

    Lattice elements are named by :func:`set_name` over the canonical state
    order. Joins come from the inclusion order, so they are closures of unions.
    """
    masks = space.masks
    names = {m: set_name(space.names(m)) for m in masks}
    pairs = [(names[a], names[b]) for a in masks for b in masks if a != b and a & b == a]
    lattice = build_lattice(list(names.values()), pairs)
    xi = {p: [names[m] for m in masks if (m >> s) & 1] for s, p in enumerate(space.states)}
    return StatePropertySystem(space.states, lattice, xi)


def _state_signature(sps, s):
    kappa = sps.kappa_masks
    sizes = sorted(bin(kappa[a]).count("1") for a in bits(sps.xi_masks[s]))
    return (len(sizes), tuple(sizes))


def _relabel(mask, perm):
    out = 0
    for s in bits(mask):
        out |= 1 << perm[s]
    return out


def sps_isomorphic(s1, s2):
    """True iff a state bijection and a lattice order-isomorphism jointly
    commute with ``xi``.

    Both inputs are assumed valid, so Cartan images are injective and the
    lattice map is forced by the state bijection; the search backtracks over
    state bijections, pruned by per-state signatures and partial Cartan images.
    """
    for s in (s1, s2):
        if len(s.states) > SIZE_CAP or len(s.lattice) > SIZE_CAP:
            raise SizeCapError(f"isomorphism search is capped at {SIZE_CAP} states/properties")
    n, m = len(s1.states), len(s1.lattice)
    if n != len(s2.states) or m != len(s2.lattice):
        return False
    sig1 = [_state_signature(s1, i) for i in range(n)]
    sig2 = [_state_signature(s2, i) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return False
    k1, k2 = s1.kappa_masks, s2.kappa_masks
    by_size = {}
    for km in k2:
        by_size.setdefault(bin(km).count("1"), []).append(km)

    perm = [None] * n
    used = [False] * n

    def consistent(depth):
        # image of every Cartan set restricted to assigned states must be the
        # restriction of some same-sized Cartan set of s2
        dom = (1 << depth) - 1
        img = 0
        for i in range(depth):
            img |= 1 << perm[i]
        for km in k1:
            part = _relabel(km & dom, perm)
            size = bin(km).count("1")
            if not any(c & img == part for c in by_size.get(size, ())):
                return False
        return True

    def complete():
        phi = [0] * m
        for a in range(m):
            b = s2.element_with_kappa(_relabel(k1[a], perm))
            if b is None:
                return False
            phi[a] = b
        if len(set(phi)) != m:
            return False
        for a in range(m):
            for b in range(m):
                if s1.lattice.le_idx(a, b) != s2.lattice.le_idx(phi[a], phi[b]):
                    return False
        return True

    def search(depth):
        if depth == n:
            return complete()
        for j in range(n):
            if used[j] or sig2[j] != sig1[depth]:
                continue
            perm[depth] = j
            used[j] = True
            if consistent(depth + 1) and search(depth + 1):
                return True
            used[j] = False
        perm[depth] = None
        return False

    return search(0)
