"""Immutable hybrid retrieval index over instructional units.

Lexical postings (term -> (ordinal, tf) pairs), per-unit embeddings, and the
metadata tables needed by the feature extractor. Persisted as a zip archive
holding meta.json + vectors.npy, versioned, with the embedder id recorded;
loading against a different embedder is an error.
"""

from __future__ import annotations

import io
import json
import math
import zipfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping

import numpy as np

from blade.corpus.types import InstructionalUnit, Resource, unit_from_dict, unit_to_dict
from blade.errors import EmptyCorpus, IndexFormatError
from blade.index.embedder import Embedder
from blade.text import tokenize

FORMAT_VERSION = 1
BM25_K1 = 1.2
BM25_B = 0.75


@dataclass(frozen=True)
class CorpusIndex:
    units: tuple[InstructionalUnit, ...]
    postings: Mapping[str, tuple[tuple[int, int], ...]]
    doc_lengths: tuple[int, ...]
    avg_doc_len: float
    vectors: np.ndarray
    embedder_id: str
    built_at: str
    resources: tuple[Resource, ...] = ()

    # derived lookups, filled in __post_init__
    unit_ordinal: Mapping[str, int] = field(default=None, repr=False)  # type: ignore[assignment]
    resource_order: Mapping[str, int] = field(default=None, repr=False)  # type: ignore[assignment]
    doc_norms: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]
    term_id: Mapping[str, int] = field(default=None, repr=False)  # type: ignore[assignment]
    term_ordinals: list = field(default=None, repr=False)  # type: ignore[assignment]
    term_tfs: list = field(default=None, repr=False)  # type: ignore[assignment]
    term_idf: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        self.vectors.setflags(write=False)
        object.__setattr__(self, "unit_ordinal", {u.id: i for i, u in enumerate(self.units)})
        order: dict[str, int] = {}
        for unit in self.units:
            order.setdefault(unit.resource_id, len(order))
        object.__setattr__(self, "resource_order", order)
        # k1*(1 - b + b*dl/avgdl) per doc, precomputed once for the kernels
        norms = np.empty(len(self.units), dtype=np.float64)
        for i, dl in enumerate(self.doc_lengths):
            norms[i] = BM25_K1 * (1.0 - BM25_B + BM25_B * dl / self.avg_doc_len)
        norms.setflags(write=False)
        object.__setattr__(self, "doc_norms", norms)
        term_id: dict[str, int] = {}
        term_ordinals: list[np.ndarray] = []
        term_tfs: list[np.ndarray] = []
        idfs = []
        n = len(self.units)
        for term, plist in self.postings.items():
            term_id[term] = len(term_ordinals)
            term_ordinals.append(np.array([o for o, _ in plist], dtype=np.int64))
            term_tfs.append(np.array([tf for _, tf in plist], dtype=np.float64))
            df = len(plist)
            idfs.append(math.log(1.0 + (n - df + 0.5) / (df + 0.5)))
        object.__setattr__(self, "term_id", term_id)
        object.__setattr__(self, "term_ordinals", term_ordinals)
        object.__setattr__(self, "term_tfs", term_tfs)
        object.__setattr__(self, "term_idf", np.array(idfs, dtype=np.float64))

    def __len__(self) -> int:
        return len(self.units)

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    def unit(self, unit_id: str) -> InstructionalUnit:
        return self.units[self.unit_ordinal[unit_id]]

    def resource_of(self, unit: InstructionalUnit) -> Resource | None:
        for res in self.resources:
            if res.id == unit.resource_id:
                return res
        return None

    def idf(self, term: str) -> float:
        tid = self.term_id.get(term)
        return 0.0 if tid is None else float(self.term_idf[tid])


def build_index(units: list[InstructionalUnit], embedder: Embedder,
                resources: tuple[Resource, ...] = (), built_at: str | None = None,
                ) -> CorpusIndex:
    if not units:
        raise EmptyCorpus("cannot index an empty unit list")
    postings: dict[str, list[tuple[int, int]]] = {}
    doc_lengths = []
    for ordinal, unit in enumerate(units):
        tokens = tokenize(unit.text)
        doc_lengths.append(len(tokens))
        counts: dict[str, int] = {}
        for token in tokens:
            counts[token] = counts.get(token, 0) + 1
        for term in sorted(counts):
            postings.setdefault(term, []).append((ordinal, counts[term]))
    vectors = np.vstack([embedder.embed(unit.text) for unit in units])
    return CorpusIndex(
        units=tuple(units),
        postings={t: tuple(p) for t, p in sorted(postings.items())},
        doc_lengths=tuple(doc_lengths),
        avg_doc_len=sum(doc_lengths) / len(doc_lengths),
        vectors=vectors,
        embedder_id=embedder.embedder_id,
        built_at=built_at or datetime.now(timezone.utc).isoformat(),
        resources=tuple(resources),
    )


def _resource_to_dict(res: Resource) -> dict:
    return {
        "id": res.id,
        "title": res.title,
        "kind": res.kind,
        "module_tag": res.module_tag,
        "path": str(res.path),
        "topics": sorted(res.topics),
        "objectives": sorted(res.objectives),
    }


def _resource_from_dict(data: dict) -> Resource:
    return Resource(
        id=data["id"],
        title=data["title"],
        kind=data["kind"],
        module_tag=data["module_tag"],
        path=Path(data["path"]),
        topics=frozenset(data["topics"]),
        objectives=frozenset(data["objectives"]),
    )


def save_index(index: CorpusIndex, path: str | Path) -> None:
    meta = {
        "format_version": FORMAT_VERSION,
        "embedder_id": index.embedder_id,
        "built_at": index.built_at,
        "avg_doc_len": index.avg_doc_len,
        "doc_lengths": list(index.doc_lengths),
        "units": [unit_to_dict(u) for u in index.units],
        "postings": {t: [list(p) for p in plist] for t, plist in index.postings.items()},
        "resources": [_resource_to_dict(r) for r in index.resources],
    }
    buf = io.BytesIO()
    np.save(buf, np.asarray(index.vectors), allow_pickle=False)
    with zipfile.ZipFile(path, "w", compression=zipfile.ZIP_DEFLATED) as zf:
        zf.writestr("meta.json", json.dumps(meta, ensure_ascii=False, sort_keys=True))
        zf.writestr("vectors.npy", buf.getvalue())


def load_index(path: str | Path, expected_embedder_id: str | None = None) -> CorpusIndex:
    path = Path(path)
    if not path.is_file():
        raise IndexFormatError(f"index file not found: {path}")
    try:
        with zipfile.ZipFile(path) as zf:
            meta = json.loads(zf.read("meta.json"))
            vectors = np.load(io.BytesIO(zf.read("vectors.npy")), allow_pickle=False)
    except (zipfile.BadZipFile, KeyError, json.JSONDecodeError, ValueError) as exc:
        raise IndexFormatError(f"unreadable index file {path}: {exc}") from exc
    if meta.get("format_version") != FORMAT_VERSION:
        raise IndexFormatError(
            f"unsupported index format version {meta.get('format_version')!r}"
        )
    if expected_embedder_id is not None and meta["embedder_id"] != expected_embedder_id:
        raise IndexFormatError(
            f"index was built with embedder {meta['embedder_id']!r}, "
            f"expected {expected_embedder_id!r}"
        )
    return CorpusIndex(
        units=tuple(unit_from_dict(u) for u in meta["units"]),
        postings={t: tuple((o, tf) for o, tf in plist) for t, plist in meta["postings"].items()},
        doc_lengths=tuple(meta["doc_lengths"]),
        avg_doc_len=meta["avg_doc_len"],
        vectors=vectors,
        embedder_id=meta["embedder_id"],
        built_at=meta["built_at"],
        resources=tuple(_resource_from_dict(r) for r in meta.get("resources", [])),
    )
