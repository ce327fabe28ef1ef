"""Compiled triangle enumeration kernel.

Same contract as the numpy fallback: orient edges from the lower
(degree, id) endpoint to the higher one, then intersect the sorted
out-neighborhoods across each oriented edge. Each triangle is reported
once, at its unique two-out-edge corner.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def triangle_corners(const cnp.int64_t[::1] indptr, const cnp.int64_t[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t m2 = indices.shape[0]
    cdef Py_ssize_t u, v, w, p, q, a_end, b_end, pos
    cdef cnp.int64_t du, dv

    deg_arr = np.diff(np.asarray(indptr))
    cdef const cnp.int64_t[::1] deg = deg_arr

    # oriented CSR; rows stay sorted by neighbor id
    cdef cnp.int64_t[::1] optr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] oidx = np.empty(m2 // 2, dtype=np.int64)
    pos = 0
    for u in range(n):
        du = deg[u]
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            dv = deg[v]
            if du < dv or (du == dv and u < v):
                oidx[pos] = v
                pos += 1
        optr[u + 1] = pos

    # pass 1: count triangles
    cdef Py_ssize_t count = 0
    for u in range(n):
        for q in range(optr[u], optr[u + 1]):
            v = oidx[q]
            p = optr[u]
            a_end = optr[u + 1]
            pos = optr[v]
            b_end = optr[v + 1]
            while p < a_end and pos < b_end:
                if oidx[p] == oidx[pos]:
                    count += 1
                    p += 1
                    pos += 1
                elif oidx[p] < oidx[pos]:
                    p += 1
                else:
                    pos += 1

    t0_arr = np.empty(count, dtype=np.int64)
    t1_arr = np.empty(count, dtype=np.int64)
    t2_arr = np.empty(count, dtype=np.int64)
    cdef cnp.int64_t[::1] t0 = t0_arr
    cdef cnp.int64_t[::1] t1 = t1_arr
    cdef cnp.int64_t[::1] t2 = t2_arr

    # pass 2: fill corner arrays
    cdef Py_ssize_t out = 0
    for u in range(n):
        for q in range(optr[u], optr[u + 1]):
            v = oidx[q]
            p = optr[u]
            a_end = optr[u + 1]
            pos = optr[v]
            b_end = optr[v + 1]
            while p < a_end and pos < b_end:
                if oidx[p] == oidx[pos]:
                    t0[out] = u
                    t1[out] = v
                    t2[out] = oidx[p]
                    out += 1
                    p += 1
                    pos += 1
                elif oidx[p] < oidx[pos]:
                    p += 1
                else:
                    pos += 1

    return t0_arr, t1_arr, t2_arr
