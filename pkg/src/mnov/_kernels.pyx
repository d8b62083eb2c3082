# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular-rank kernels; same API as ``_kernels_py``."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

PRIME = 2147483647


cdef int64_t _inv(int64_t a, int64_t p):
    cdef int64_t r = 1, e = p - 2
    a %= p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


cdef int _rank(int64_t* a, int nrows, int ncols, int64_t p):
    cdef int rank = 0, col, i, j, piv
    cdef int64_t inv, f, t
    cdef int64_t* prow
    cdef int64_t* row
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if a[i * ncols + col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(col, ncols):
                t = a[piv * ncols + j]
                a[piv * ncols + j] = a[rank * ncols + j]
                a[rank * ncols + j] = t
        prow = a + rank * ncols
        inv = _inv(prow[col], p)
        for j in range(col, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, nrows):
            row = a + i * ncols
            f = row[col]
            if f != 0:
                for j in range(col, ncols):
                    if prow[j] != 0:
                        row[j] = (row[j] - f * prow[j]) % p
                        if row[j] < 0:
                            row[j] += p
        rank += 1
    return rank


def rank_mod_p(rows, int ncols, p=PRIME):
    """Rank modulo ``p`` of sparse integer rows (``list`` of ``{col: int}``)."""
    cdef int nrows = len(rows)
    cdef int64_t pp = p
    if nrows == 0 or ncols == 0:
        return 0
    cdef int64_t* a = <int64_t*>malloc(nrows * ncols * sizeof(int64_t))
    if a == NULL:
        raise MemoryError()
    cdef int i, k
    try:
        for k in range(nrows * ncols):
            a[k] = 0
        for i, row in enumerate(rows):
            for c, v in row.items():
                a[i * ncols + <int>c] = v % p
        return _rank(a, nrows, ncols, pp)
    finally:
        free(a)


def dense_rank_mod_p(matrix, p=PRIME):
    """Rank modulo ``p`` of a dense integer matrix given as a list of lists."""
    cdef int nrows = len(matrix)
    if nrows == 0:
        return 0
    cdef int ncols = len(matrix[0])
    if ncols == 0:
        return 0
    cdef int64_t pp = p
    cdef int64_t* a = <int64_t*>malloc(nrows * ncols * sizeof(int64_t))
    if a == NULL:
        raise MemoryError()
    cdef int i, j
    try:
        for i in range(nrows):
            row = matrix[i]
            for j in range(ncols):
                a[i * ncols + j] = row[j] % p
        return _rank(a, nrows, ncols, pp)
    finally:
        free(a)
