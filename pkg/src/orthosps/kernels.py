"""Backend selection for the bitmask kernels.

The compiled ``_ckernels`` extension is used when it imports and the problem
fits in 64-bit masks; otherwise calls go to ``_kernels_py``. Set
``ORTHOSPS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

_c = None
if not os.environ.get("ORTHOSPS_PURE_PYTHON"):
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"

# subset tables allocate 2**n words
_C_MASK_LIMIT = 63
_C_TABLE_LIMIT = 26


def _pick(n, table=False):
    if _c is None:
        return _kernels_py
    if n > (_C_TABLE_LIMIT if table else _C_MASK_LIMIT):
        return _kernels_py
    return _c


def subset_perps(adj, n):
    return _pick(n, table=True).subset_perps(adj, n)


def biorthogonal_family(adj, n):
    return _pick(n, table=True).biorthogonal_family(adj, n)


def meet_closure(gens, meet, n):
    return _pick(n).meet_closure(gens, meet, n)


def family_law_witness(rows, meet, n, top):
    return _pick(n, table=True).family_law_witness(rows, meet, n, top)


def close_family_law(rows, meet, n, top):
    return _pick(n, table=True).close_family_law(rows, meet, n, top)
