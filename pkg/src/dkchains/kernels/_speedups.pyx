# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse integer kernels over int64.

The dispatch layer only routes calls here after proving (from entry
magnitudes and inner dimension) that no intermediate can overflow int64.
"""
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

IS_COMPILED = True


def matmul_arrays(Py_ssize_t nrows_a, Py_ssize_t ncols_a,
                  int64_t[::1] ra, int64_t[::1] ca, int64_t[::1] va,
                  Py_ssize_t ncols_b,
                  int64_t[::1] rb, int64_t[::1] cb, int64_t[::1] vb):
    """COO sparse product; returns (rows, cols, vals) lists of the nonzeros."""
    cdef Py_ssize_t nnz_a = ra.shape[0]
    cdef Py_ssize_t nnz_b = rb.shape[0]
    cdef Py_ssize_t i, j, k, t, u, s, start, stop
    cdef int64_t v

    rows_out = []
    cols_out = []
    vals_out = []
    if nnz_a == 0 or nnz_b == 0:
        return rows_out, cols_out, vals_out

    # group B entries by row (counting sort on ra-compatible index range)
    cdef Py_ssize_t *b_ptr = <Py_ssize_t *> malloc((ncols_a + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *b_ord = <Py_ssize_t *> malloc(nnz_b * sizeof(Py_ssize_t))
    # group A entries by row
    cdef Py_ssize_t *a_ptr = <Py_ssize_t *> malloc((nrows_a + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *a_ord = <Py_ssize_t *> malloc(nnz_a * sizeof(Py_ssize_t))
    # per-output-row accumulator with visit stamps
    cdef int64_t *acc = <int64_t *> malloc(ncols_b * sizeof(int64_t))
    cdef Py_ssize_t *stamp = <Py_ssize_t *> malloc(ncols_b * sizeof(Py_ssize_t))
    if (b_ptr == NULL or b_ord == NULL or a_ptr == NULL or a_ord == NULL
            or acc == NULL or stamp == NULL):
        free(b_ptr); free(b_ord); free(a_ptr); free(a_ord); free(acc); free(stamp)
        raise MemoryError()

    try:
        for t in range(ncols_a + 1):
            b_ptr[t] = 0
        for t in range(nnz_b):
            b_ptr[rb[t] + 1] += 1
        for t in range(ncols_a):
            b_ptr[t + 1] += b_ptr[t]
        for t in range(nnz_b):
            j = rb[t]
            b_ord[b_ptr[j]] = t
            b_ptr[j] += 1
        for t in range(ncols_a, 0, -1):
            b_ptr[t] = b_ptr[t - 1]
        b_ptr[0] = 0

        for t in range(nrows_a + 1):
            a_ptr[t] = 0
        for t in range(nnz_a):
            a_ptr[ra[t] + 1] += 1
        for t in range(nrows_a):
            a_ptr[t + 1] += a_ptr[t]
        for t in range(nnz_a):
            i = ra[t]
            a_ord[a_ptr[i]] = t
            a_ptr[i] += 1
        for t in range(nrows_a, 0, -1):
            a_ptr[t] = a_ptr[t - 1]
        a_ptr[0] = 0

        for k in range(ncols_b):
            stamp[k] = -1

        for i in range(nrows_a):
            for t in range(a_ptr[i], a_ptr[i + 1]):
                u = a_ord[t]
                j = ca[u]
                v = va[u]
                start = b_ptr[j]
                stop = b_ptr[j + 1]
                for s in range(start, stop):
                    k = cb[b_ord[s]]
                    if stamp[k] != i:
                        stamp[k] = i
                        acc[k] = 0
                    acc[k] += v * vb[b_ord[s]]
            for t in range(a_ptr[i], a_ptr[i + 1]):
                u = a_ord[t]
                j = ca[u]
                for s in range(b_ptr[j], b_ptr[j + 1]):
                    k = cb[b_ord[s]]
                    if stamp[k] == i and acc[k] != 0:
                        rows_out.append(i)
                        cols_out.append(k)
                        vals_out.append(acc[k])
                        stamp[k] = -2 - i  # emitted marker for this row
        return rows_out, cols_out, vals_out
    finally:
        free(b_ptr); free(b_ord); free(a_ptr); free(a_ord); free(acc); free(stamp)


def kron_arrays(Py_ssize_t nrows_b, Py_ssize_t ncols_b,
                int64_t[::1] ra, int64_t[::1] ca, int64_t[::1] va,
                int64_t[::1] rb, int64_t[::1] cb, int64_t[::1] vb):
    """Kronecker product in COO form, A outer and B inner."""
    cdef Py_ssize_t nnz_a = ra.shape[0]
    cdef Py_ssize_t nnz_b = rb.shape[0]
    cdef Py_ssize_t t, u
    cdef int64_t ri, cj
    rows_out = []
    cols_out = []
    vals_out = []
    for t in range(nnz_a):
        ri = ra[t] * nrows_b
        cj = ca[t] * ncols_b
        for u in range(nnz_b):
            rows_out.append(ri + rb[u])
            cols_out.append(cj + cb[u])
            vals_out.append(va[t] * vb[u])
    return rows_out, cols_out, vals_out
