"""Finite posets and complete lattices.

Elements are opaque strings. The order is always the reflexive reading
(``a <= b``); carriers are kept in natural-sorted order so that every derived
table is deterministic.
"""

from dataclasses import dataclass
from functools import cached_property

from ._util import SIZE_CAP, bits, canonical, mask_of, names_of, natural_key
from .errors import LatticeError, OrderError, SizeCapError, UnknownElementError
from .report import Check, ValidationReport


def _closure_rows(n, rows):
    """Reflexive-transitive closure of an adjacency-mask relation (Warshall)."""
    rows = [r | (1 << i) for i, r in enumerate(rows)]
    for k in range(n):
        kbit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & kbit:
                rows[i] |= rk
    return rows


@dataclass(frozen=True)
class FinitePoset:
    """A finite partial order.

    ``leq`` may be any generating set of pairs; it is replaced by its
    reflexive-transitive closure. Raises :class:`OrderError` on a cycle.
    """

    elements: tuple
    leq: frozenset

    def __post_init__(self):
        elements = tuple(self.elements)
        if len(set(elements)) != len(elements):
            raise OrderError("duplicate element identifiers")
        elements = canonical(elements)
        index = {x: i for i, x in enumerate(elements)}
        n = len(elements)
        rows = [0] * n
        for a, b in self.leq:
            if a not in index or b not in index:
                raise UnknownElementError(f"order pair ({a!r}, {b!r}) names an unknown element",
                                          witness=[a, b])
            rows[index[a]] |= 1 << index[b]
        rows = _closure_rows(n, rows)
        for i in range(n):
            for j in bits(rows[i]):
                if j != i and (rows[j] >> i) & 1:
                    raise OrderError(f"{elements[i]!r} and {elements[j]!r} lie on a cycle",
                                     witness=[elements[i], elements[j]])
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_up", tuple(rows))
        down = [0] * n
        for i in range(n):
            for j in bits(rows[i]):
                down[j] |= 1 << i
        object.__setattr__(self, "_down", tuple(down))
        object.__setattr__(self, "leq", frozenset(
            (elements[i], elements[j]) for i in range(n) for j in bits(rows[i])))

    def __len__(self):
        return len(self.elements)

    def index(self, a):
        try:
            return self._index[a]
        except KeyError:
            raise UnknownElementError(f"unknown element {a!r}", witness=a) from None

    def le(self, a, b):
        return bool((self._up[self.index(a)] >> self.index(b)) & 1)

    def up_mask(self, i):
        return self._up[i]

    def down_mask(self, i):
        return self._down[i]

    def _greatest_in(self, mask):
        """Index of the greatest element of ``mask``, or ``None``."""
        for i in bits(mask):
            if self._down[i] & mask == mask:
                return i
        return None

    def _least_in(self, mask):
        for i in bits(mask):
            if self._up[i] & mask == mask:
                return i
        return None


def validate_complete_lattice(poset):
    """Check that every subset of a finite poset has an infimum and supremum.

    Uses the finite reduction: binary meets and joins exist for every pair and
    a global bottom and top exist.
    """
    n = len(poset)
    full = (1 << n) - 1
    criterion = "finite reduction: binary meets/joins plus global bottom/top"
    no_meet, no_join = [], []
    for i in range(n):
        for j in range(i + 1, n):
            pair = [poset.elements[i], poset.elements[j]]
            if poset._greatest_in(poset._down[i] & poset._down[j]) is None:
                no_meet.append(pair)
            if poset._least_in(poset._up[i] & poset._up[j]) is None:
                no_join.append(pair)
    bottom = poset._least_in(full)
    top = poset._greatest_in(full)
    return ValidationReport((
        Check.of("binary-meets", no_meet, criterion),
        Check.of("binary-joins", no_join, criterion),
        Check.of("bottom", [] if bottom is not None else ["no least element"]),
        Check.of("top", [] if top is not None else ["no greatest element"]),
    ))


class CompleteLattice:
    """A validated finite complete lattice with cached meet and join tables.

    Build instances with :func:`build_lattice`. Tables are flat lists of
    element indices, ``meet_table[i * n + j]``.
    """

    def __init__(self, poset):
        report = validate_complete_lattice(poset)
        if not report.ok:
            bad = report.failures()[0]
            raise LatticeError(f"{bad.name} fails", witness=bad.witnesses[0])
        self.poset = poset
        n = len(poset)
        self.n = n
        full = (1 << n) - 1
        self._bottom = poset._least_in(full)
        self._top = poset._greatest_in(full)
        meet = [0] * (n * n)
        join = [0] * (n * n)
        for i in range(n):
            for j in range(n):
                meet[i * n + j] = poset._greatest_in(poset._down[i] & poset._down[j])
                join[i * n + j] = poset._least_in(poset._up[i] & poset._up[j])
        self.meet_table = tuple(meet)
        self.join_table = tuple(join)

    @property
    def elements(self):
        return self.poset.elements

    @property
    def bottom(self):
        return self.elements[self._bottom]

    @property
    def top(self):
        return self.elements[self._top]

    @property
    def bottom_index(self):
        return self._bottom

    @property
    def top_index(self):
        return self._top

    def index(self, a):
        return self.poset.index(a)

    def le(self, a, b):
        return self.poset.le(a, b)

    def le_idx(self, i, j):
        return bool((self.poset._up[i] >> j) & 1)

    def meet(self, a, b):
        return self.elements[self.meet_table[self.index(a) * self.n + self.index(b)]]

    def join(self, a, b):
        return self.elements[self.join_table[self.index(a) * self.n + self.index(b)]]

    def meet_idx(self, i, j):
        return self.meet_table[i * self.n + j]

    def meet_of_mask(self, mask):
        m = self._top
        n = self.n
        for i in bits(mask):
            m = self.meet_table[m * n + i]
        return m

    def join_of_mask(self, mask):
        m = self._bottom
        n = self.n
        for i in bits(mask):
            m = self.join_table[m * n + i]
        return m

    def mask(self, names):
        return mask_of(names, self.poset._index, UnknownElementError)

    def names(self, mask):
        return names_of(mask, self.elements)

    @cached_property
    def down_masks(self):
        return self.poset._down

    @cached_property
    def up_masks(self):
        return self.poset._up

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return (isinstance(other, CompleteLattice) and self.elements == other.elements
                and self.poset.leq == other.poset.leq)

    def __hash__(self):
        return hash((self.elements, self.poset.leq))

    def __repr__(self):
        return f"CompleteLattice({len(self)} elements, bottom={self.bottom!r}, top={self.top!r})"


def build_lattice(elements, leq_pairs):
    """Close ``leq_pairs`` reflexively and transitively and validate the result.

    Raises :class:`OrderError` on a cycle and :class:`LatticeError` (with a
    witness pair) when some infimum or supremum is missing.
    """
    return CompleteLattice(FinitePoset(tuple(elements), frozenset(map(tuple, leq_pairs))))


def meet_family(lat, subset):
    """Greatest lower bound of ``subset``; the empty family meets to top."""
    return lat.elements[lat.meet_of_mask(lat.mask(subset))]


def join_family(lat, subset):
    """Least upper bound of ``subset``; the empty family joins to bottom."""
    return lat.elements[lat.join_of_mask(lat.mask(subset))]


def check_size(n, what="carrier"):
    if n > SIZE_CAP:
        raise SizeCapError(f"{what} has {n} members; subset enumeration is capped at {SIZE_CAP}")


def sorted_elements(names):
    return sorted(names, key=natural_key)
