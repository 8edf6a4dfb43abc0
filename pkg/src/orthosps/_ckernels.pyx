# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Cython bitmask kernels. Same contracts as ``_kernels_py``; masks fit in
64 bits, so callers route ``n > 63`` (and subset tables beyond ``n = 26``) to
the pure-Python module."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t, int64_t

ctypedef uint64_t mask_t


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _lowbit_index(mask_t x) nogil:
    return __builtin_ctzll(x)


cdef mask_t* _to_masks(seq, int n) except NULL:
    cdef mask_t* out = <mask_t*> malloc(max(n, 1) * sizeof(mask_t))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = <mask_t> seq[i]
    return out


cdef int* _to_table(seq, int n) except NULL:
    cdef int* out = <int*> malloc(max(n * n, 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for i in range(n * n):
        out[i] = <int> seq[i]
    return out


cdef mask_t _closure(mask_t gens, const int* meet, int n) nogil:
    cdef mask_t closed = gens, frontier = gens, new, f, c
    cdef int i, j, m
    while frontier:
        new = 0
        f = frontier
        while f:
            i = _lowbit_index(f)
            f &= f - 1
            c = closed
            while c:
                j = _lowbit_index(c)
                c &= c - 1
                m = meet[i * n + j]
                if not ((closed >> m) & 1):
                    new |= (<mask_t> 1) << m
        closed |= new
        frontier = new
    return closed


cdef int _meet_of_mask(mask_t mask, const int* meet, int n, int top) nogil:
    cdef int m = top
    while mask:
        m = meet[m * n + _lowbit_index(mask)]
        mask &= mask - 1
    return m


def subset_perps(adj, int n):
    cdef mask_t* rows = _to_masks(adj, n)
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef mask_t* table = <mask_t*> malloc(size * sizeof(mask_t))
    cdef Py_ssize_t a
    cdef mask_t low
    if table == NULL:
        free(rows)
        raise MemoryError()
    try:
        with nogil:
            table[0] = <mask_t> (size - 1)
            for a in range(1, size):
                low = (<mask_t> a) & (~(<mask_t> a) + 1)
                table[a] = table[a ^ low] & rows[_lowbit_index(low)]
        return [table[a] for a in range(size)]
    finally:
        free(table)
        free(rows)


def biorthogonal_family(adj, int n):
    return sorted(set(subset_perps(adj, n)))


def meet_closure(gens, meet, int n):
    cdef int* tbl = _to_table(meet, n)
    cdef mask_t out
    try:
        out = _closure(<mask_t> gens, tbl, n)
        return out
    finally:
        free(tbl)


cdef struct _Scan:
    mask_t* partners
    int* meets
    mask_t* memo_key
    mask_t* memo_val
    char* memo_set


cdef int _alloc_scan(_Scan* s, Py_ssize_t size) nogil:
    s.partners = <mask_t*> malloc(size * sizeof(mask_t))
    s.meets = <int*> malloc(size * sizeof(int))
    s.memo_val = <mask_t*> malloc(size * sizeof(mask_t))
    s.memo_set = <char*> malloc(size * sizeof(char))
    s.memo_key = NULL
    if s.partners == NULL or s.meets == NULL or s.memo_val == NULL or s.memo_set == NULL:
        return -1
    return 0


cdef void _free_scan(_Scan* s) nogil:
    free(s.partners)
    free(s.meets)
    free(s.memo_val)
    free(s.memo_set)


def family_law_witness(rows_seq, meet_seq, int n, int top):
    cdef mask_t* rows = _to_masks(rows_seq, n)
    cdef int* meet = _to_table(meet_seq, n)
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef _Scan s
    cdef Py_ssize_t a, k
    cdef mask_t low, common, mc, b
    cdef int i, m
    cdef int64_t found_a = -1
    cdef mask_t found_b = 0
    try:
        if _alloc_scan(&s, size) != 0:
            raise MemoryError()
        with nogil:
            for k in range(size):
                s.memo_set[k] = 0
            s.partners[0] = <mask_t> (size - 1)
            s.meets[0] = top
            for a in range(1, size):
                low = (<mask_t> a) & (~(<mask_t> a) + 1)
                i = _lowbit_index(low)
                common = s.partners[a ^ low] & rows[i]
                s.partners[a] = common
                m = meet[s.meets[a ^ low] * n + i]
                s.meets[a] = m
                if not common:
                    continue
                if s.memo_set[common]:
                    mc = s.memo_val[common]
                else:
                    mc = _closure(common, meet, n)
                    s.memo_val[common] = mc
                    s.memo_set[common] = 1
                if mc & ~rows[m]:
                    b = 0
                    while True:
                        b = (b - common) & common
                        if not ((rows[m] >> _meet_of_mask(b, meet, n, top)) & 1):
                            break
                    found_a = a
                    found_b = b
                    break
        if found_a < 0:
            return None
        return int(found_a), int(found_b)
    finally:
        _free_scan(&s)
        free(meet)
        free(rows)


def close_family_law(rows_seq, meet_seq, int n, int top):
    cdef mask_t* rows = _to_masks(rows_seq, n)
    cdef int* meet = _to_table(meet_seq, n)
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef _Scan s
    cdef Py_ssize_t a, k
    cdef mask_t low, common, mc, missing, r
    cdef int i, m, changed = 1
    try:
        if _alloc_scan(&s, size) != 0:
            raise MemoryError()
        with nogil:
            for i in range(n):
                r = rows[i]
                while r:
                    rows[_lowbit_index(r)] |= (<mask_t> 1) << i
                    r &= r - 1
            while changed:
                changed = 0
                for k in range(size):
                    s.memo_set[k] = 0
                s.partners[0] = <mask_t> (size - 1)
                s.meets[0] = top
                for a in range(1, size):
                    low = (<mask_t> a) & (~(<mask_t> a) + 1)
                    i = _lowbit_index(low)
                    common = s.partners[a ^ low] & rows[i]
                    s.partners[a] = common
                    m = meet[s.meets[a ^ low] * n + i]
                    s.meets[a] = m
                    if not common:
                        continue
                    if s.memo_set[common]:
                        mc = s.memo_val[common]
                    else:
                        mc = _closure(common, meet, n)
                        s.memo_val[common] = mc
                        s.memo_set[common] = 1
                    missing = mc & ~rows[m]
                    if missing:
                        changed = 1
                        rows[m] |= missing
                        while missing:
                            rows[_lowbit_index(missing)] |= (<mask_t> 1) << m
                            missing &= missing - 1
        return [rows[i] for i in range(n)]
    finally:
        _free_scan(&s)
        free(meet)
        free(rows)
