# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: P1 assembly loops and the (p, q) quotient energy.

Mirrors sharpconst._kernels_py; selected at import by sharpconst._kernels.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, hypot, pow

cnp.import_array()

BACKEND = "compiled"


def tri_assembly_arrays(double[:, ::1] xy, long[:, ::1] tris):
    cdef Py_ssize_t nt = tris.shape[0]
    rows_arr = np.empty(9 * nt, dtype=np.int64)
    cols_arr = np.empty(9 * nt, dtype=np.int64)
    kv_arr = np.empty(9 * nt, dtype=np.float64)
    mv_arr = np.empty(9 * nt, dtype=np.float64)
    cdef long[::1] rows = rows_arr
    cdef long[::1] cols = cols_arr
    cdef double[::1] kv = kv_arr
    cdef double[::1] mv = mv_arr

    cdef Py_ssize_t t, a, b, pos
    cdef long i0, i1, i2
    cdef double ex0, ey0, ex1, ey1, ex2, ey2, area, inv4a, m_off, m_diag
    cdef double ex[3]
    cdef double ey[3]
    cdef long vid[3]

    for t in range(nt):
        i0 = tris[t, 0]
        i1 = tris[t, 1]
        i2 = tris[t, 2]
        vid[0] = i0
        vid[1] = i1
        vid[2] = i2
        # edge vectors opposite each vertex
        ex[0] = xy[i2, 0] - xy[i1, 0]
        ey[0] = xy[i2, 1] - xy[i1, 1]
        ex[1] = xy[i0, 0] - xy[i2, 0]
        ey[1] = xy[i0, 1] - xy[i2, 1]
        ex[2] = xy[i1, 0] - xy[i0, 0]
        ey[2] = xy[i1, 1] - xy[i0, 1]
        area = 0.5 * (ex[1] * ey[2] - ey[1] * ex[2])
        inv4a = 1.0 / (4.0 * area)
        m_diag = area / 6.0
        m_off = area / 12.0
        pos = 9 * t
        for a in range(3):
            for b in range(3):
                rows[pos] = vid[a]
                cols[pos] = vid[b]
                kv[pos] = (ex[a] * ex[b] + ey[a] * ey[b]) * inv4a
                mv[pos] = m_diag if a == b else m_off
                pos += 1
    return rows_arr, cols_arr, kv_arr, mv_arr


def edge_mass_arrays(double[:, ::1] xy, long[:, ::1] edges):
    cdef Py_ssize_t ne = edges.shape[0]
    rows_arr = np.empty(4 * ne, dtype=np.int64)
    cols_arr = np.empty(4 * ne, dtype=np.int64)
    bv_arr = np.empty(4 * ne, dtype=np.float64)
    cdef long[::1] rows = rows_arr
    cdef long[::1] cols = cols_arr
    cdef double[::1] bv = bv_arr

    cdef Py_ssize_t e
    cdef long i, j
    cdef double length
    for e in range(ne):
        i = edges[e, 0]
        j = edges[e, 1]
        length = hypot(xy[j, 0] - xy[i, 0], xy[j, 1] - xy[i, 1])
        rows[4 * e] = i
        cols[4 * e] = i
        bv[4 * e] = length / 3.0
        rows[4 * e + 1] = j
        cols[4 * e + 1] = j
        bv[4 * e + 1] = length / 3.0
        rows[4 * e + 2] = i
        cols[4 * e + 2] = j
        bv[4 * e + 2] = length / 6.0
        rows[4 * e + 3] = j
        cols[4 * e + 3] = i
        bv[4 * e + 3] = length / 6.0
    return rows_arr, cols_arr, bv_arr


cdef inline double _sgn(double x) nogil:
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0


cdef inline double _pow1(double x, double e) nogil:
    # x**e for x >= 0 with cheap paths for the common exponents
    if e == 1.0:
        return x
    if e == 0.0:
        return 1.0
    return pow(x, e)


def pq_energy(double[::1] u, double[::1] gw, double[::1] nw,
              double inv_h, double p, double q):
    cdef Py_ssize_t n = u.shape[0]
    ga_arr = np.zeros(n, dtype=np.float64)
    gb_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] ga = ga_arr
    cdef double[::1] gb = gb_arr

    cdef Py_ssize_t i
    cdef double big_a = 0.0, big_b = 0.0
    cdef double d, ad, au, t, s
    cdef double pm1 = p - 1.0, qm1 = q - 1.0
    for i in range(n - 1):
        d = (u[i + 1] - u[i]) * inv_h
        ad = fabs(d)
        t = _pow1(ad, pm1)  # |d|^(p-1), reused for value and gradient
        big_a += gw[i] * t * ad
        s = gw[i] * t * _sgn(d) * (p * inv_h)
        ga[i] -= s
        ga[i + 1] += s
    for i in range(n):
        au = fabs(u[i])
        t = _pow1(au, qm1)
        big_b += nw[i] * t * au
        gb[i] = nw[i] * t * _sgn(u[i]) * q
    return big_a, big_b, ga_arr, gb_arr
