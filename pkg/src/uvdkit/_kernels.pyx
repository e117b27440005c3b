# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled smoothing kernel: direct Nadaraya-Watson on a uniform grid.

Weights depend only on the lag |i - j|, so they are tabulated once and the
inner loop is a plain multiply-add. Lags whose weight underflows below
1e-19 of the peak are skipped; the truncation error is far below float64
resolution.
"""

from libc.math cimport exp, log, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "compiled"


def smooth_uniform(values, double bandwidth):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t length = v.shape[0]
    if length == 1:
        return v.copy()

    cdef cnp.ndarray[cnp.float64_t, ndim=1] table = np.empty(length, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(length, dtype=np.float64)
    cdef double inv = 1.0 / ((length - 1) * bandwidth)
    cdef double u
    cdef Py_ssize_t d, i, j, lo, hi, cutoff

    # weight < 1e-19 beyond cutoff lags; sqrt(2 * ln(1e19)) ~= 9.35 bandwidths
    cutoff = <Py_ssize_t>(sqrt(2.0 * 19.0 * log(10.0)) / inv) + 1
    if cutoff > length - 1:
        cutoff = length - 1
    for d in range(cutoff + 1):
        u = d * inv
        table[d] = exp(-0.5 * u * u)

    cdef double num, den, w
    for i in range(length):
        lo = i - cutoff
        if lo < 0:
            lo = 0
        hi = i + cutoff
        if hi > length - 1:
            hi = length - 1
        num = 0.0
        den = 0.0
        for j in range(lo, hi + 1):
            w = table[i - j if i >= j else j - i]
            num += w * v[j]
            den += w
        out[i] = num / den
    return out
