# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring core: BM25 posting accumulation and linear feature scoring.

Mirrors blade.kernels.pure exactly (same expressions, same accumulation
order) so results are bit-identical with the fallback.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

IMPLEMENTATION = "compiled"


def bm25_accumulate(list ordinals_per_term, list tfs_per_term, list idfs,
                    const double[::1] norms, double k1, double[::1] out):
    cdef Py_ssize_t t, j, m
    cdef const long[::1] ordinals
    cdef const double[::1] tfs
    cdef double idf, tf
    cdef Py_ssize_t o
    for t in range(len(ordinals_per_term)):
        ordinals = ordinals_per_term[t]
        tfs = tfs_per_term[t]
        idf = idfs[t]
        m = ordinals.shape[0]
        for j in range(m):
            o = ordinals[j]
            tf = tfs[j]
            out[o] += idf * (tf * (k1 + 1.0)) / (tf + norms[o])
    return np.asarray(out)


def linear_scores(const double[:, ::1] features, const double[::1] weights, double bias,
                  double[::1] out):
    cdef Py_ssize_t i, j
    cdef Py_ssize_t n = features.shape[0]
    cdef Py_ssize_t d = features.shape[1]
    for i in range(n):
        out[i] = bias
    for j in range(d):
        for i in range(n):
            out[i] += features[i, j] * weights[j]
    return np.asarray(out)
