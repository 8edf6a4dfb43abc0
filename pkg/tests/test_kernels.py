import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from orthosps import _kernels_py as py
from orthosps import kernels

try:
    from orthosps import _ckernels as cy
except ImportError:
    cy = None

BACKENDS = [pytest.param(py, id="python"),
            pytest.param(cy, id="cython", marks=pytest.mark.skipif(cy is None, reason="not built"))]


@st.composite
def adjacency(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj, n


@st.composite
def meet_lattice(draw, max_states=4):
    """Intersection-closed family as a lattice: returns (masks, meet table, top)."""
    k = draw(st.integers(1, max_states))
    full = (1 << k) - 1
    fam = {0, full} | set(draw(st.lists(st.integers(0, full), max_size=5)))
    changed = True
    while changed:
        changed = False
        for a in list(fam):
            for b in list(fam):
                if a & b not in fam:
                    fam.add(a & b)
                    changed = True
    masks = sorted(fam)
    assume(len(masks) <= 7)
    idx = {m: i for i, m in enumerate(masks)}
    meet = [idx[a & b] for a in masks for b in masks]
    return masks, meet, idx[full], idx[0]


@st.composite
def lattice_relation(draw):
    masks, meet, top, bottom = draw(meet_lattice())
    n = len(masks)
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if draw(st.integers(0, 3)) == 0:
                rows[i] |= 1 << j
    return masks, meet, top, bottom, rows


def brute_perps(adj, n):
    out = []
    for a in range(1 << n):
        m = (1 << n) - 1
        for q in range(n):
            if a >> q & 1:
                m &= adj[q]
        out.append(m)
    return out


def brute_meet_of(mask, masks, meet, top):
    n = len(masks)
    m = top
    for i in range(n):
        if mask >> i & 1:
            m = meet[m * n + i]
    return m


def brute_violations(rows, masks, meet, top):
    n = len(masks)
    found = []
    for a in range(1, 1 << n):
        for b in range(1, 1 << n):
            if all(rows[i] >> j & 1 for i in range(n) if a >> i & 1 for j in range(n) if b >> j & 1):
                ma = brute_meet_of(a, masks, meet, top)
                mb = brute_meet_of(b, masks, meet, top)
                if not rows[ma] >> mb & 1:
                    found.append((a, b))
    return found


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("mod", BACKENDS)
@settings(max_examples=80, deadline=None)
@given(data=adjacency())
def test_subset_perps(mod, data):
    adj, n = data
    assert list(mod.subset_perps(adj, n)) == brute_perps(adj, n)
    assert list(mod.biorthogonal_family(adj, n)) == sorted(set(brute_perps(adj, n)))


@pytest.mark.parametrize("mod", BACKENDS)
@settings(max_examples=80, deadline=None)
@given(data=meet_lattice(), gens=st.integers(0, 2 ** 16 - 1))
def test_meet_closure(mod, data, gens):
    masks, meet, _, _ = data
    n = len(masks)
    gens &= (1 << n) - 1
    closed = {masks[i] for i in range(n) if gens >> i & 1}
    changed = True
    while changed:
        changed = False
        for a in list(closed):
            for b in list(closed):
                if a & b not in closed:
                    closed.add(a & b)
                    changed = True
    want = sum(1 << masks.index(m) for m in closed)
    assert mod.meet_closure(gens, meet, n) == want


@pytest.mark.parametrize("mod", BACKENDS)
@settings(max_examples=80, deadline=None)
@given(data=lattice_relation())
def test_family_law_witness(mod, data):
    masks, meet, top, _, rows = data
    n = len(masks)
    got = mod.family_law_witness(rows, meet, n, top)
    violations = brute_violations(rows, masks, meet, top)
    if not violations:
        assert got is None
    else:
        assert got in violations
        a = got[0]
        assert a == min(v[0] for v in violations)
        assert got[1] == min(v[1] for v in violations if v[0] == a)


@pytest.mark.parametrize("mod", BACKENDS)
@settings(max_examples=80, deadline=None)
@given(data=lattice_relation())
def test_close_family_law(mod, data):
    masks, meet, top, _, rows = data
    n = len(masks)
    closed = list(mod.close_family_law(rows, meet, n, top))
    assert all(r & c == r for r, c in zip(rows, closed))
    for i in range(n):
        for j in range(n):
            assert (closed[i] >> j & 1) == (closed[j] >> i & 1)
    assert brute_violations(closed, masks, meet, top) == []
    assert list(mod.close_family_law(closed, meet, n, top)) == closed


@pytest.mark.skipif(cy is None, reason="not built")
@settings(max_examples=100, deadline=None)
@given(data=lattice_relation())
def test_backends_agree(data):
    masks, meet, top, _, rows = data
    n = len(masks)
    assert cy.family_law_witness(rows, meet, n, top) == py.family_law_witness(rows, meet, n, top)
    assert list(cy.close_family_law(rows, meet, n, top)) == py.close_family_law(rows, meet, n, top)


@pytest.mark.parametrize("mod", BACKENDS)
def test_close_family_law_adds_forced_meet(mod):
    # masks 0, 1, 3, 5, 7: relating 7 to both 3 and 5 forces 7 against 3 & 5 = 1
    masks = [0, 1, 3, 5, 7]
    meet = [masks.index(a & b) for a in masks for b in masks]
    rows = [0, 0, 0, 0, 0b01100]
    out = list(mod.close_family_law(rows, meet, 5, 4))
    assert out[4] == 0b01110
    assert out[1] == out[2] == out[3] == 0b10000
    assert brute_violations(out, masks, meet, 4) == []
