# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled exchange-rotation kernel.

Hot loop of sequence evaluation: applies the closed-form exchange rotation
c*I + i*s*E to a dense complex matrix in place.  Semantics match
``_kernel_py.apply_exchange_inplace`` exactly.
"""

import numpy as np

cimport numpy as cnp

BACKEND = "cython"


def apply_exchange_inplace(cnp.complex128_t[:, ::1] x,
                           cnp.intp_t[::1] same,
                           cnp.intp_t[::1] rows_a,
                           cnp.intp_t[::1] rows_b,
                           double c, double s):
    """x <- (c*I + i*s*E) @ x, in place; c = cos(t), s = sign * sin(t)."""
    cdef Py_ssize_t m = x.shape[1]
    cdef Py_ssize_t i, j, ra, rb
    cdef double complex js = s * 1j
    cdef double complex ph = c + s * 1j
    cdef double complex ta, tb
    with nogil:
        for i in range(rows_a.shape[0]):
            ra = rows_a[i]
            rb = rows_b[i]
            for j in range(m):
                ta = x[ra, j]
                tb = x[rb, j]
                x[ra, j] = c * ta + js * tb
                x[rb, j] = c * tb + js * ta
        for i in range(same.shape[0]):
            ra = same[i]
            for j in range(m):
                x[ra, j] = x[ra, j] * ph
