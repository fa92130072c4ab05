#!/usr/bin/env python3
"""Benchmark the compiled scoring core against the pure-numpy fallback.

Builds a synthetic corpus, times BM25 posting accumulation and linear
feature scoring through both implementations, and checks they agree
bit-for-bit. Run:

    python benchmarks/bench_kernels.py [--docs 20000] [--queries 200]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from blade.kernels import pure

try:
    from blade import _core as compiled
except ImportError:
    compiled = None


def synth_postings(rng, n_docs, vocab, doc_len):
    """Postings arrays shaped like a real index over random documents."""
    need = n_docs * doc_len
    samples = np.empty(0, dtype=np.int64)
    while samples.size < need:
        z = rng.zipf(1.3, size=need)
        samples = np.concatenate([samples, z[z < vocab]])
    docs = samples[:need].reshape(n_docs, doc_len)
    postings: dict[int, dict[int, int]] = {}
    for d in range(n_docs):
        for t in docs[d]:
            postings.setdefault(int(t), {}).setdefault(d, 0)
            postings[int(t)][d] += 1
    arrays = {}
    for t, plist in postings.items():
        ords = np.array(sorted(plist), dtype=np.int64)
        tfs = np.array([plist[o] for o in sorted(plist)], dtype=np.float64)
        arrays[t] = (ords, tfs)
    lengths = rng.integers(doc_len // 2, doc_len * 2, size=n_docs)
    norms = 1.2 * (1.0 - 0.75 + 0.75 * lengths / lengths.mean())
    return arrays, norms.astype(np.float64)


def bench_bm25(impl, arrays, norms, queries, n_docs):
    start = time.perf_counter()
    last = None
    for q in queries:
        ordinals = [arrays[t][0] for t in q if t in arrays]
        tfs = [arrays[t][1] for t in q if t in arrays]
        idfs = [1.0 + 0.1 * t for t in q if t in arrays]
        out = np.zeros(n_docs)
        impl.bm25_accumulate(ordinals, tfs, idfs, norms, 1.2, out)
        last = out
    return time.perf_counter() - start, last


def bench_linear(impl, feats, weight_sets):
    start = time.perf_counter()
    last = None
    for w, b in weight_sets:
        last = np.asarray(impl.linear_scores(feats, w, b, np.empty(feats.shape[0])))
    return time.perf_counter() - start, last


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--docs", type=int, default=20_000)
    parser.add_argument("--vocab", type=int, default=5_000)
    parser.add_argument("--doc-len", type=int, default=120)
    parser.add_argument("--queries", type=int, default=200)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    print(f"building synthetic corpus: {args.docs} docs, vocab {args.vocab} ...")
    arrays, norms = synth_postings(rng, args.docs, args.vocab, args.doc_len)
    queries = [rng.integers(0, args.vocab, size=rng.integers(2, 8)).tolist()
               for _ in range(args.queries)]
    feats = rng.uniform(-1, 1, size=(args.docs, 6))
    weight_sets = [(rng.uniform(-1, 1, size=6), float(rng.uniform(-1, 1)))
                   for _ in range(args.queries)]

    rows = []
    t_pure_bm25, ref_bm25 = bench_bm25(pure, arrays, norms, queries, args.docs)
    t_pure_lin, ref_lin = bench_linear(pure, feats, weight_sets)
    rows.append(("pure", t_pure_bm25, t_pure_lin))

    if compiled is not None:
        t_c_bm25, out_bm25 = bench_bm25(compiled, arrays, norms, queries, args.docs)
        t_c_lin, out_lin = bench_linear(compiled, feats, weight_sets)
        rows.append(("compiled", t_c_bm25, t_c_lin))
        assert np.array_equal(ref_bm25, out_bm25), "kernel outputs diverged"
        assert np.array_equal(ref_lin, out_lin), "kernel outputs diverged"
    else:
        print("compiled extension not available; benchmarking fallback only")

    print(f"\n{'impl':<10} {'bm25 (s)':>10} {'linear (s)':>12}")
    for name, t_bm25, t_lin in rows:
        print(f"{name:<10} {t_bm25:>10.3f} {t_lin:>12.3f}")
    if len(rows) == 2:
        print(f"\nspeedup: bm25 x{rows[0][1] / rows[1][1]:.1f}, "
              f"linear x{rows[0][2] / rows[1][2]:.1f} "
              "(outputs bit-identical)")


if __name__ == "__main__":
    main()
