# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Fraction-free (Bareiss) row echelon over the integers, 64-bit fast path.

Entries are stored as C int64 with 128-bit intermediate products.  Any entry
that leaves the 64-bit range raises OverflowError; the caller falls back to
the arbitrary-precision implementation for that matrix.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    """
    typedef __int128 ff_wide;
    #define FF_I64_MAX 9223372036854775807LL
    """
    ctypedef long long ff_wide
    long long FF_I64_MAX


def echelon_i64(rows, Py_ssize_t ncols):
    """Return (rank, pivot columns, echelon rows) for an integer matrix.

    ``rows`` is a sequence of equal-length coefficient rows.  Raises
    OverflowError if any input or intermediate value exceeds 64 bits.
    """
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0, [], []
    cdef long long *m = <long long *> malloc(nrows * ncols * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, r, c, col, rank, piv
    cdef long long pv, f, prev, tmp
    cdef ff_wide acc, wq
    try:
        for i in range(nrows):
            row = rows[i]
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j in range(ncols):
                m[i * ncols + j] = row[j]  # raises OverflowError when too big

        rank = 0
        prev = 1
        col = 0
        pivots = []
        while col < ncols and rank < nrows:
            piv = -1
            for r in range(rank, nrows):
                if m[r * ncols + col] != 0:
                    piv = r
                    break
            if piv < 0:
                col += 1
                continue
            if piv != rank:
                for c in range(ncols):
                    tmp = m[rank * ncols + c]
                    m[rank * ncols + c] = m[piv * ncols + c]
                    m[piv * ncols + c] = tmp
            pv = m[rank * ncols + col]
            for r in range(rank + 1, nrows):
                f = m[r * ncols + col]
                if f != 0:
                    for c in range(col, ncols):
                        acc = <ff_wide> m[r * ncols + c] * pv
                        acc = acc - <ff_wide> f * m[rank * ncols + c]
                        wq = acc / prev
                        if wq > FF_I64_MAX or wq < -FF_I64_MAX:
                            raise OverflowError("entry exceeds 64 bits")
                        m[r * ncols + c] = <long long> wq
                elif pv != prev:
                    for c in range(col, ncols):
                        acc = <ff_wide> m[r * ncols + c] * pv
                        wq = acc / prev
                        if wq > FF_I64_MAX or wq < -FF_I64_MAX:
                            raise OverflowError("entry exceeds 64 bits")
                        m[r * ncols + c] = <long long> wq
            prev = pv
            pivots.append(col)
            rank += 1
            col += 1

        ech = [
            [m[r * ncols + c] for c in range(ncols)]
            for r in range(rank)
        ]
        return rank, pivots, ech
    finally:
        free(m)
