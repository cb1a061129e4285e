# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled codebook scan kernel.

Identical semantics (and IEEE arithmetic) to the pure-numpy fallback in
_scan_py; the C loop avoids materializing per-candidate histograms.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs
from libc.string cimport memset

cnp.import_array()


def scan_triples(x_seq, v_rows, u_rows, pmf, s_v, s_u, delta):
    """Strong-typicality mask for (x_seq, v_rows[j], u_rows[j]) triples."""
    cdef const cnp.int64_t[::1] x = np.ascontiguousarray(x_seq, dtype=np.int64)
    cdef const cnp.int64_t[:, ::1] v = np.ascontiguousarray(v_rows, dtype=np.int64)
    cdef const cnp.int64_t[:, ::1] u = np.ascontiguousarray(u_rows, dtype=np.int64)
    cdef const cnp.float64_t[::1] p = np.ascontiguousarray(pmf, dtype=np.float64)
    cdef Py_ssize_t sv = s_v
    cdef Py_ssize_t su = s_u
    cdef double d = delta

    cdef Py_ssize_t n_cand = v.shape[0]
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t n_cells = p.shape[0]

    out_arr = np.zeros(n_cand, dtype=np.uint8)
    cdef cnp.uint8_t[::1] out = out_arr
    if n_cand == 0:
        return out_arr

    cdef cnp.int64_t hi = (
        np.asarray(x).max() * (sv * su) + np.asarray(v).max() * su + np.asarray(u).max()
    )
    cdef cnp.int64_t lo = (
        np.asarray(x).min() * (sv * su) + np.asarray(v).min() * su + np.asarray(u).min()
    )
    if hi >= n_cells or lo < 0:
        raise ValueError("symbol indices exceed the reference pmf cells")

    counts_arr = np.zeros(n_cells, dtype=np.int64)
    base_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] counts = counts_arr
    cdef cnp.int64_t[::1] base = base_arr

    cdef Py_ssize_t j, t, c
    cdef double freq
    cdef int ok

    with nogil:
        for t in range(n):
            base[t] = x[t] * (sv * su)
        for j in range(n_cand):
            memset(&counts[0], 0, n_cells * sizeof(cnp.int64_t))
            for t in range(n):
                counts[base[t] + v[j, t] * su + u[j, t]] += 1
            ok = 1
            for c in range(n_cells):
                freq = counts[c] / <double> n
                if fabs(freq - p[c]) > d:
                    ok = 0
                    break
                if p[c] == 0.0 and counts[c] > 0:
                    ok = 0
                    break
            out[j] = ok
    return out_arr
