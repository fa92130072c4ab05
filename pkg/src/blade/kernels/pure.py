"""Pure-numpy scoring kernels (fallback when blade._core is not compiled).

Both implementations accumulate in the same order with the same expression
shapes, so scores are bit-identical between the compiled and fallback paths:
per query term, contribution = idf * (tf * (k1+1)) / (tf + norm[doc]) added
into the running score array; linear scoring sums feature columns in index
order.
"""

from __future__ import annotations

import numpy as np

IMPLEMENTATION = "pure"


def bm25_accumulate(ordinals_per_term, tfs_per_term, idfs, norms, k1, out):
    """Add BM25 contributions of each query term into `out` (len n_docs).

    ordinals_per_term: list of int64 arrays (doc ordinals holding the term)
    tfs_per_term:      list of float64 arrays (term frequencies, same shape)
    idfs:              list of floats, one per term
    norms:             float64 array, k1*(1 - b + b*dl/avgdl) per doc
    """
    for ordinals, tfs, idf in zip(ordinals_per_term, tfs_per_term, idfs):
        out[ordinals] += idf * (tfs * (k1 + 1.0)) / (tfs + norms[ordinals])
    return out


def linear_scores(features, weights, bias, out):
    """out[i] = bias + sum_j features[i, j] * weights[j], summed in j order."""
    out[:] = bias
    for j in range(features.shape[1]):
        out += features[:, j] * weights[j]
    return out
