"""Hybrid ranking: lexical BM25 + dense cosine + curriculum metadata signals.

Educational relevance is scored as a linear model over six features:

    f_lex    BM25 score, min-max normalized over the candidate set
    f_vec    cosine similarity of unit-norm embeddings
    f_topic  Jaccard overlap of query topic tags and unit topics
    f_obj    fraction of the unit's learning objectives matched by the query
    f_kind   configurable prior per resource kind (default 0.5 for all)
    f_module 1 when the unit's resource belongs to the session's module

Query topic tags / objectives are found by exact (case-insensitive)
substring lookup of the corpus's known topic and objective strings inside
the query text; no query-analysis model is involved.

BM25 uses k1=1.2, b=0.75 and the non-negative idf variant
ln(1 + (N - df + 0.5)/(df + 0.5)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from blade.errors import DimensionMismatch, EmptyCorpus
from blade.index.build import BM25_K1, CorpusIndex
from blade.kernels import bm25_accumulate, linear_scores
from blade.text import tokenize

FEATURE_NAMES = ("f_lex", "f_vec", "f_topic", "f_obj", "f_kind", "f_module")
N_FEATURES = len(FEATURE_NAMES)

DEFAULT_KIND_PRIOR = {kind: 0.5 for kind in ("textbook", "slides", "transcript", "reading", "notebook")}


@dataclass(frozen=True)
class FeatureVector:
    f_lex: float
    f_vec: float
    f_topic: float
    f_obj: float
    f_kind: float
    f_module: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.f_lex, self.f_vec, self.f_topic, self.f_obj, self.f_kind, self.f_module],
            dtype=np.float64,
        )


@dataclass(frozen=True)
class RankerWeights:
    w: np.ndarray
    b: float = 0.0

    def __post_init__(self):
        w = np.asarray(self.w, dtype=np.float64)
        if w.shape != (N_FEATURES,):
            raise ValueError(f"weights must have shape ({N_FEATURES},), got {w.shape}")
        if not (np.all(np.isfinite(w)) and np.isfinite(self.b)):
            raise ValueError("weights must be finite")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    def to_dict(self) -> dict:
        return {"w": [float(x) for x in self.w], "b": float(self.b)}

    @classmethod
    def from_dict(cls, data: dict) -> "RankerWeights":
        return cls(w=np.array(data["w"], dtype=np.float64), b=float(data["b"]))


def default_weights() -> RankerWeights:
    # lexical and vector signals dominate; metadata breaks ties; kind prior neutral
    return RankerWeights(w=np.array([0.4, 0.4, 0.1, 0.05, 0.0, 0.05]), b=0.0)


@dataclass(frozen=True)
class RankingConfig:
    kind_prior: dict = field(default_factory=lambda: dict(DEFAULT_KIND_PRIOR))
    max_per_resource: int = 2  # diversity cap on result lists


@dataclass(frozen=True)
class ScoredPassage:
    unit_id: str
    features: FeatureVector
    score: float
    rank: int


def lexical_score(index: CorpusIndex, query_terms: list[str], unit_ordinal: int) -> float:
    """BM25 of one unit, accumulated per query term in the order given.

    Mirrors the batch kernel expression exactly so the two paths agree
    bit-for-bit.
    """
    norm = float(index.doc_norms[unit_ordinal])
    score = 0.0
    for term in query_terms:
        tid = index.term_id.get(term)
        if tid is None:
            continue
        pos = np.searchsorted(index.term_ordinals[tid], unit_ordinal)
        ordinals = index.term_ordinals[tid]
        if pos >= len(ordinals) or ordinals[pos] != unit_ordinal:
            continue
        tf = float(index.term_tfs[tid][pos])
        idf = float(index.term_idf[tid])
        score += idf * (tf * (BM25_K1 + 1.0)) / (tf + norm)
    return score


def bm25_scores(index: CorpusIndex, query_terms: list[str]) -> np.ndarray:
    """BM25 of every unit for the given term sequence (kernel hot path)."""
    out = np.zeros(len(index), dtype=np.float64)
    ordinals_per_term, tfs_per_term, idfs = [], [], []
    for term in query_terms:
        tid = index.term_id.get(term)
        if tid is None:
            continue
        ordinals_per_term.append(index.term_ordinals[tid])
        tfs_per_term.append(index.term_tfs[tid])
        idfs.append(float(index.term_idf[tid]))
    if idfs:
        bm25_accumulate(ordinals_per_term, tfs_per_term, idfs, index.doc_norms, BM25_K1, out)
    return out


def vector_score(index: CorpusIndex, query_vec: np.ndarray, unit_ordinal: int) -> float:
    query_vec = np.asarray(query_vec, dtype=np.float64)
    if query_vec.shape != (index.dimension,):
        raise DimensionMismatch(
            f"query vector has shape {query_vec.shape}, index dimension is {index.dimension}"
        )
    return float(np.dot(index.vectors[unit_ordinal], query_vec))


def query_topic_tags(index: CorpusIndex, query: str) -> frozenset[str]:
    """Known topic strings appearing verbatim (case-insensitive) in the query."""
    q = query.lower()
    known = set()
    for unit in index.units:
        known.update(unit.topics)
    return frozenset(t for t in known if t.lower() in q)


def query_objective_tags(index: CorpusIndex, query: str) -> frozenset[str]:
    q = query.lower()
    known = set()
    for unit in index.units:
        known.update(unit.objectives)
    return frozenset(o for o in known if o.lower() in q)


def _normalize_lex(raw: np.ndarray) -> np.ndarray:
    lo = float(raw.min())
    hi = float(raw.max())
    if hi == lo:
        return np.zeros_like(raw)
    return (raw - lo) / (hi - lo)


def feature_matrix(index: CorpusIndex, query: str, session_module: str | None,
                   config: RankingConfig | None = None,
                   embedder=None, query_vec: np.ndarray | None = None) -> np.ndarray:
    """(n_units, 6) feature array; the candidate set is the whole corpus.

    query_vec may be precomputed; otherwise `embedder` embeds the query (it
    must match the index's embedder). Without either, f_vec is 0.
    """
    config = config or RankingConfig()
    n = len(index)
    feats = np.zeros((n, N_FEATURES), dtype=np.float64)
    terms = tokenize(query)
    feats[:, 0] = _normalize_lex(bm25_scores(index, terms))
    if query_vec is None and embedder is not None:
        query_vec = embedder.embed(query)
    if query_vec is not None:
        query_vec = np.asarray(query_vec, dtype=np.float64)
        if query_vec.shape != (index.dimension,):
            raise DimensionMismatch(
                f"query vector has shape {query_vec.shape}, index dimension is {index.dimension}"
            )
        feats[:, 1] = index.vectors @ query_vec
    q_topics = query_topic_tags(index, query)
    q_objectives = query_objective_tags(index, query)
    kind_of = {r.id: r.kind for r in index.resources}
    module_of = {r.id: r.module_tag for r in index.resources}
    for i, unit in enumerate(index.units):
        union = q_topics | unit.topics
        feats[i, 2] = len(q_topics & unit.topics) / len(union) if union else 0.0
        feats[i, 3] = len(q_objectives & unit.objectives) / max(1, len(unit.objectives))
        feats[i, 4] = config.kind_prior.get(kind_of.get(unit.resource_id, ""), 0.5)
        feats[i, 5] = 1.0 if session_module and module_of.get(unit.resource_id) == session_module else 0.0
    return feats


def extract_features(index: CorpusIndex, query: str, session_module: str | None,
                     unit_ordinal: int, config: RankingConfig | None = None,
                     embedder=None, query_vec: np.ndarray | None = None) -> FeatureVector:
    row = feature_matrix(index, query, session_module, config, embedder, query_vec)[unit_ordinal]
    return FeatureVector(*[float(x) for x in row])


def order_key(index: CorpusIndex, scores: np.ndarray):
    """Deterministic ordering: score descending, ties by (resource order, seq)."""
    def key(i: int):
        unit = index.units[i]
        return (-scores[i], index.resource_order[unit.resource_id], unit.seq)
    return key


def rank(index: CorpusIndex, query: str, session_module: str | None,
         weights: RankerWeights, k: int, config: RankingConfig | None = None,
         embedder=None, query_vec: np.ndarray | None = None) -> list[ScoredPassage]:
    """Top-k passages by w.f + b, honoring the per-resource diversity cap."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(index) == 0:
        raise EmptyCorpus("index holds no units")
    config = config or RankingConfig()
    feats = feature_matrix(index, query, session_module, config, embedder, query_vec)
    scores = linear_scores(feats, weights.w, weights.b, np.empty(len(index), dtype=np.float64))
    order = sorted(range(len(index)), key=order_key(index, scores))
    results: list[ScoredPassage] = []
    per_resource: dict[str, int] = {}
    for i in order:
        unit = index.units[i]
        taken = per_resource.get(unit.resource_id, 0)
        if taken >= config.max_per_resource:
            continue
        per_resource[unit.resource_id] = taken + 1
        results.append(
            ScoredPassage(
                unit_id=unit.id,
                features=FeatureVector(*[float(x) for x in feats[i]]),
                score=float(scores[i]),
                rank=len(results) + 1,
            )
        )
        if len(results) == k:
            break
    return results
