# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction kernels; same contracts as ``_kernels_py``."""

from libc.stdlib cimport malloc, free

from . import _kernels_py

IMPLEMENTATION = "cython"

cdef extern from *:
    bint mul_overflow "__builtin_mul_overflow" (long long a, long long b, long long *res) nogil
    bint sub_overflow "__builtin_sub_overflow" (long long a, long long b, long long *res) nogil


cdef inline long long _modinv(long long a, long long p) nogil:
    cdef long long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b != 0:
        t = a % b
        a = b
        b = t
    return a


def rref_modp(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef long long a, b, inv
    cdef long long *m
    cdef long long *prow
    cdef long long *row
    cdef Py_ssize_t *nz
    cdef Py_ssize_t *pivots
    cdef Py_ssize_t nnz, k
    if nrows == 0 or ncols == 0:
        return [], []
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    nz = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    pivots = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if m == NULL or nz == NULL or pivots == NULL:
        free(m)
        free(nz)
        free(pivots)
        raise MemoryError()
    try:
        for i in range(nrows):
            src = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = src[j]
        with nogil:
            for c in range(ncols):
                if r == nrows:
                    break
                piv = -1
                for i in range(r, nrows):
                    if m[i * ncols + c] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    for j in range(ncols):
                        a = m[piv * ncols + j]
                        m[piv * ncols + j] = m[r * ncols + j]
                        m[r * ncols + j] = a
                prow = m + r * ncols
                a = prow[c]
                if a != 1:
                    inv = _modinv(a, p)
                    for j in range(c, ncols):
                        prow[j] = prow[j] * inv % p
                nnz = 0
                for j in range(c, ncols):
                    if prow[j] != 0:
                        nz[nnz] = j
                        nnz += 1
                for i in range(nrows):
                    if i == r:
                        continue
                    row = m + i * ncols
                    b = row[c]
                    if b == 0:
                        continue
                    for k in range(nnz):
                        j = nz[k]
                        row[j] = (row[j] - b * prow[j]) % p
                        if row[j] < 0:
                            row[j] += p
                pivots[r] = c
                r += 1
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
        piv_cols = [pivots[i] for i in range(r)]
    finally:
        free(m)
        free(nz)
        free(pivots)
    return out, piv_cols


cdef int _rref_int64(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                     Py_ssize_t *pivots, Py_ssize_t *nz, Py_ssize_t *rank) nogil:
    """Returns 0 on success, 1 on int64 overflow."""
    cdef Py_ssize_t i, j, c, r = 0, piv, nnz, k
    cdef long long a, b, g, a1, b1, x, y
    cdef long long *prow
    cdef long long *row
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i * ncols + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                a = m[piv * ncols + j]
                m[piv * ncols + j] = m[r * ncols + j]
                m[r * ncols + j] = a
        prow = m + r * ncols
        if prow[c] < 0:
            for j in range(c, ncols):
                prow[j] = -prow[j]
        a = prow[c]
        nnz = 0
        for j in range(c, ncols):
            if prow[j] != 0:
                nz[nnz] = j
                nnz += 1
        for i in range(nrows):
            if i == r:
                continue
            row = m + i * ncols
            b = row[c]
            if b == 0:
                continue
            if a == 1:
                for k in range(nnz):
                    j = nz[k]
                    if mul_overflow(b, prow[j], &x):
                        return 1
                    if sub_overflow(row[j], x, &y):
                        return 1
                    row[j] = y
            else:
                g = _gcd(a, b)
                a1 = a // g
                b1 = b // g
                for j in range(ncols):
                    if row[j] != 0:
                        if mul_overflow(a1, row[j], &x):
                            return 1
                        row[j] = x
                for k in range(nnz):
                    j = nz[k]
                    if mul_overflow(b1, prow[j], &x):
                        return 1
                    if sub_overflow(row[j], x, &y):
                        return 1
                    row[j] = y
                g = 0
                for j in range(ncols):
                    if row[j] != 0:
                        g = _gcd(g, row[j])
                        if g == 1:
                            break
                if g > 1:
                    for j in range(ncols):
                        row[j] = row[j] // g
        pivots[r] = c
        r += 1
    rank[0] = r
    return 0


def rref_int(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, rank = 0
    cdef long long *m
    cdef Py_ssize_t *pivots
    cdef Py_ssize_t *nz
    cdef int status
    if nrows == 0 or ncols == 0:
        return [], []
    limit = 1 << 62
    for src in rows:
        for v in src:
            if v >= limit or v <= -limit:
                return _kernels_py.rref_int(rows, ncols)
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    pivots = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    nz = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if m == NULL or pivots == NULL or nz == NULL:
        free(m)
        free(pivots)
        free(nz)
        raise MemoryError()
    try:
        for i in range(nrows):
            src = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = src[j]
        with nogil:
            status = _rref_int64(m, nrows, ncols, pivots, nz, &rank)
        if status != 0:
            return _kernels_py.rref_int(rows, ncols)
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        piv = [pivots[i] for i in range(rank)]
    finally:
        free(m)
        free(pivots)
        free(nz)
    return out, piv
