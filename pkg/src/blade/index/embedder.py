"""Text embedders producing unit-norm vectors.

The built-in HashingEmbedder gives a deterministic dense signal with no
model download: signed feature hashing of lowercased unigrams (blake2b, so
identical across platforms and processes) followed by L2 normalization. Any
object with the same surface (dimension, embedder_id, embed) can stand in,
e.g. a client for a remote embedding service.
"""

from __future__ import annotations

import hashlib
from typing import Protocol, runtime_checkable

import numpy as np

from blade.text import tokenize


@runtime_checkable
class Embedder(Protocol):
    dimension: int
    embedder_id: str

    def embed(self, text: str) -> np.ndarray: ...


class HashingEmbedder:
    """Signed unigram feature hashing into `dimension` buckets."""

    def __init__(self, dimension: int = 256):
        if dimension < 2:
            raise ValueError("dimension must be >= 2")
        self.dimension = dimension
        self.embedder_id = f"hashing-unigram-v1-d{dimension}"

    def embed(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dimension, dtype=np.float64)
        for token in tokenize(text):
            h = int.from_bytes(
                hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "little"
            )
            bucket = (h >> 1) % self.dimension
            vec[bucket] += 1.0 if h & 1 else -1.0
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            # no tokens (or cancellation): deterministic unit basis vector
            vec[0] = 1.0
            return vec
        return vec / norm
