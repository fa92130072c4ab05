"""Scoring kernel selection.

Prefers the compiled extension (blade._core) and falls back to the numpy
implementation when it is not built. BLADE_PURE_KERNELS=1 forces the
fallback. Both paths return bit-identical scores; see
benchmarks/bench_kernels.py for the speed comparison.
"""

from __future__ import annotations

import os

from blade.kernels import pure as _pure

if os.environ.get("BLADE_PURE_KERNELS") == "1":
    _impl = _pure
else:
    try:
        from blade import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

bm25_accumulate = _impl.bm25_accumulate
linear_scores = _impl.linear_scores


def implementation() -> str:
    """'compiled' when the extension is active, else 'pure'."""
    return _impl.IMPLEMENTATION
