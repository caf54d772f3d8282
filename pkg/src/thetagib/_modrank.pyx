# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled prime-field rank kernel.

Same contract as ``_modrank_py.rank_mod_p``; the modulus must satisfy
p*p < 2**63 so products of reduced entries fit in a signed 64-bit word.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc


cdef long long _powmod(long long base, long long expo, long long p) noexcept nogil:
    cdef long long acc = 1
    base %= p
    while expo:
        if expo & 1:
            acc = acc * base % p
        base = base * base % p
        expo >>= 1
    return acc


def rank_mod_p(flat, Py_ssize_t nrows, Py_ssize_t ncols, long long p):
    """Rank over F_p of the row-major matrix stored in ``flat``."""
    if nrows == 0 or ncols == 0:
        return 0
    cdef long long[::1] src = flat
    cdef long long *m = <long long *> PyMem_Malloc(nrows * ncols * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, row, col, piv, r, c
    cdef long long f, inv, t
    cdef int rank = 0
    try:
        for i in range(nrows * ncols):
            m[i] = src[i]
        row = 0
        for col in range(ncols):
            piv = -1
            for r in range(row, nrows):
                if m[r * ncols + col]:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != row:
                for c in range(col, ncols):
                    t = m[row * ncols + c]
                    m[row * ncols + c] = m[piv * ncols + c]
                    m[piv * ncols + c] = t
            inv = _powmod(m[row * ncols + col], p - 2, p)
            for r in range(row + 1, nrows):
                f = m[r * ncols + col]
                if f:
                    f = f * inv % p
                    for c in range(col, ncols):
                        t = (m[r * ncols + c] - f * m[row * ncols + c]) % p
                        if t < 0:
                            t += p
                        m[r * ncols + c] = t
            rank += 1
            row += 1
            if row == nrows:
                break
    finally:
        PyMem_Free(m)
    return rank
