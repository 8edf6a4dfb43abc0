"""Pure-Python bitmask kernels.

Sets are ints used as bitmasks over ``range(n)``. A binary relation is a list
``rows`` where bit ``j`` of ``rows[i]`` is set iff ``(i, j)`` is related. A meet
table is a flat list of length ``n * n`` holding element indices.

``_ckernels`` implements the same functions in Cython; both must agree bit for
bit.
"""


def subset_perps(adj, n):
    """Return ``P`` of length ``2**n`` with ``P[A]`` the annihilator of ``A``.

    ``P[A] = AND(adj[q] for q in A)`` and ``P[0]`` is the full mask.
    """
    size = 1 << n
    table = [0] * size
    table[0] = size - 1
    for a in range(1, size):
        low = a & -a
        table[a] = table[a ^ low] & adj[low.bit_length() - 1]
    return table


def biorthogonal_family(adj, n):
    """Sorted distinct masks ``{B^perp | B subset}``; equals ``{A^perp^perp}``."""
    return sorted(set(subset_perps(adj, n)))


def meet_closure(gens, meet, n):
    """Close the element mask ``gens`` under binary meet."""
    closed = gens
    frontier = gens
    while frontier:
        new = 0
        f = frontier
        while f:
            low = f & -f
            i = low.bit_length() - 1
            f ^= low
            c = closed
            while c:
                lowc = c & -c
                j = lowc.bit_length() - 1
                c ^= lowc
                m = meet[i * n + j]
                if not (closed >> m) & 1:
                    new |= 1 << m
        closed |= new
        frontier = new
    return closed


def _meet_of_mask(mask, meet, n, top):
    m = top
    while mask:
        low = mask & -mask
        m = meet[m * n + low.bit_length() - 1]
        mask ^= low
    return m


def family_law_witness(rows, meet, n, top):
    """First ``(A, B)`` of nonempty element masks with ``A x B`` related but
    ``(meet A, meet B)`` unrelated, or ``None``.

    ``A`` is scanned in increasing numeric order; ``B`` is the numerically
    smallest violating submask of the common partners of ``A``.
    """
    size = 1 << n
    partners = [0] * size
    meets = [0] * size
    partners[0] = size - 1
    meets[0] = top
    memo = {}
    for a in range(1, size):
        low = a & -a
        i = low.bit_length() - 1
        partners[a] = common = partners[a ^ low] & rows[i]
        meets[a] = m = meet[meets[a ^ low] * n + i]
        if not common:
            continue
        mc = memo.get(common)
        if mc is None:
            mc = memo[common] = meet_closure(common, meet, n)
        if mc & ~rows[m]:
            # smallest submask whose meet escapes rows[m]
            b = 0
            while True:
                b = (b - common) & common
                if not (rows[m] >> _meet_of_mask(b, meet, n, top)) & 1:
                    return a, b
    return None


def close_family_law(rows, meet, n, top):
    """Least superset of ``rows`` that is symmetric and obeys the family law."""
    rows = list(rows)
    for i in range(n):
        r = rows[i]
        while r:
            low = r & -r
            rows[low.bit_length() - 1] |= 1 << i
            r ^= low
    size = 1 << n
    changed = True
    while changed:
        changed = False
        partners = [0] * size
        meets = [0] * size
        partners[0] = size - 1
        meets[0] = top
        memo = {}
        for a in range(1, size):
            low = a & -a
            i = low.bit_length() - 1
            partners[a] = common = partners[a ^ low] & rows[i]
            meets[a] = m = meet[meets[a ^ low] * n + i]
            if not common:
                continue
            mc = memo.get(common)
            if mc is None:
                mc = memo[common] = meet_closure(common, meet, n)
            missing = mc & ~rows[m]
            if missing:
                changed = True
                rows[m] |= missing
                while missing:
                    lowm = missing & -missing
                    rows[lowm.bit_length() - 1] |= 1 << m
                    missing ^= lowm
    return rows
