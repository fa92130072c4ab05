"""Hybrid index construction, retrieval, and the trainable pairwise ranker."""

from blade.index.build import (
    BM25_B,
    BM25_K1,
    CorpusIndex,
    build_index,
    load_index,
    save_index,
)
from blade.index.embedder import Embedder, HashingEmbedder
from blade.index.ranker import (
    TrainingTriple,
    evaluate_ranker,
    load_triples,
    pairwise_loss,
    pairwise_loss_grad,
    save_triples,
    train_ranker,
    training_run,
    triple_feature_arrays,
)
from blade.index.retrieval import (
    FEATURE_NAMES,
    FeatureVector,
    RankerWeights,
    RankingConfig,
    ScoredPassage,
    bm25_scores,
    default_weights,
    extract_features,
    feature_matrix,
    lexical_score,
    order_key,
    query_topic_tags,
    rank,
    vector_score,
)

__all__ = [
    "BM25_B",
    "BM25_K1",
    "CorpusIndex",
    "Embedder",
    "FEATURE_NAMES",
    "FeatureVector",
    "HashingEmbedder",
    "RankerWeights",
    "RankingConfig",
    "ScoredPassage",
    "TrainingTriple",
    "bm25_scores",
    "build_index",
    "default_weights",
    "evaluate_ranker",
    "extract_features",
    "feature_matrix",
    "lexical_score",
    "load_index",
    "load_triples",
    "order_key",
    "pairwise_loss",
    "pairwise_loss_grad",
    "query_topic_tags",
    "rank",
    "save_index",
    "save_triples",
    "train_ranker",
    "training_run",
    "triple_feature_arrays",
    "vector_score",
]
