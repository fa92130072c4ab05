"""Pairwise ranker training over (query, positive, negative) triples.

RankNet-style objective on the engineered features: with s(q, u) = w.f + b,
minimize the mean pairwise logistic loss

    L(w) = mean over triples of log(1 + exp(-(s(q, u+) - s(q, u-))))

by full-batch gradient descent. The bias cancels in every margin, so its
gradient is identically zero. Features are bounded (|f_vec| <= 1, the rest
in [0, 1]), which bounds the loss curvature and makes plain descent with
lr <= 0.1 monotonically non-increasing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from blade.errors import NoTriples, UnknownUnitId
from blade.index.build import CorpusIndex
from blade.index.retrieval import (
    RankerWeights,
    RankingConfig,
    feature_matrix,
    order_key,
)


@dataclass(frozen=True)
class TrainingTriple:
    query: str
    positive_unit_id: str
    negative_unit_id: str
    context: str | None = None  # module tag active when the query was asked

    def __post_init__(self):
        if self.positive_unit_id == self.negative_unit_id:
            raise ValueError("positive and negative must differ")


def save_triples(triples: Iterable[TrainingTriple], fh: IO[str]) -> None:
    for t in triples:
        record = {
            "query": t.query,
            "positive_unit_id": t.positive_unit_id,
            "negative_unit_id": t.negative_unit_id,
        }
        if t.context is not None:
            record["module_tag"] = t.context
        fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
        fh.write("\n")


def load_triples(path_or_fh) -> list[TrainingTriple]:
    if isinstance(path_or_fh, (str, Path)):
        with open(path_or_fh, encoding="utf-8") as fh:
            return load_triples(fh)
    out = []
    for line in path_or_fh:
        if not line.strip():
            continue
        rec = json.loads(line)
        out.append(
            TrainingTriple(
                query=rec["query"],
                positive_unit_id=rec["positive_unit_id"],
                negative_unit_id=rec["negative_unit_id"],
                context=rec.get("module_tag"),
            )
        )
    return out


def triple_feature_arrays(index: CorpusIndex, triples: list[TrainingTriple],
                          config: RankingConfig | None = None, embedder=None,
                          ) -> tuple[np.ndarray, np.ndarray]:
    """(F_positive, F_negative) stacked per triple; feature matrices are
    computed once per distinct (query, context) pair."""
    if not triples:
        raise NoTriples("no training triples supplied")
    cache: dict[tuple[str, str | None], np.ndarray] = {}
    rows_pos, rows_neg = [], []
    for t in triples:
        for uid in (t.positive_unit_id, t.negative_unit_id):
            if uid not in index.unit_ordinal:
                raise UnknownUnitId(uid)
        key = (t.query, t.context)
        if key not in cache:
            cache[key] = feature_matrix(index, t.query, t.context, config, embedder)
        feats = cache[key]
        rows_pos.append(feats[index.unit_ordinal[t.positive_unit_id]])
        rows_neg.append(feats[index.unit_ordinal[t.negative_unit_id]])
    return np.vstack(rows_pos), np.vstack(rows_neg)


def pairwise_loss(w: np.ndarray, f_pos: np.ndarray, f_neg: np.ndarray) -> float:
    margins = (f_pos - f_neg) @ w
    return float(np.mean(np.logaddexp(0.0, -margins)))


def pairwise_loss_grad(w: np.ndarray, f_pos: np.ndarray, f_neg: np.ndarray,
                       ) -> tuple[float, np.ndarray]:
    """Loss and its analytic gradient wrt w (checked against finite differences)."""
    diffs = f_pos - f_neg
    margins = diffs @ w
    loss = float(np.mean(np.logaddexp(0.0, -margins)))
    # d/dm log(1+e^-m) = -sigmoid(-m); sigma(-m) = exp(-logaddexp(0, m))
    sig = np.exp(-np.logaddexp(0.0, margins))
    grad = -(sig @ diffs) / len(margins)
    return loss, grad


def training_run(triples: list[TrainingTriple], index: CorpusIndex,
                 init: RankerWeights, lr: float = 0.1, epochs: int = 200,
                 config: RankingConfig | None = None, embedder=None,
                 ) -> tuple[RankerWeights, list[float]]:
    """Full-batch gradient descent; returns final weights and the loss at
    epoch 0..epochs (length epochs+1)."""
    f_pos, f_neg = triple_feature_arrays(index, triples, config, embedder)
    w = np.array(init.w, dtype=np.float64)
    losses = [pairwise_loss(w, f_pos, f_neg)]
    for _ in range(epochs):
        _, grad = pairwise_loss_grad(w, f_pos, f_neg)
        w = w - lr * grad
        losses.append(pairwise_loss(w, f_pos, f_neg))
    return RankerWeights(w=w, b=init.b), losses


def train_ranker(triples: list[TrainingTriple], index: CorpusIndex,
                 init: RankerWeights, lr: float = 0.1, epochs: int = 200,
                 config: RankingConfig | None = None, embedder=None) -> RankerWeights:
    weights, _ = training_run(triples, index, init, lr, epochs, config, embedder)
    return weights


def evaluate_ranker(weights: RankerWeights, eval_triples: list[TrainingTriple],
                    index: CorpusIndex, config: RankingConfig | None = None,
                    embedder=None) -> dict[str, float]:
    """Pairwise accuracy (ties count as failures) and MRR of the positive
    within the full-corpus ordering."""
    if not eval_triples:
        raise NoTriples("no evaluation triples supplied")
    f_pos, f_neg = triple_feature_arrays(index, eval_triples, config, embedder)
    s_pos = f_pos @ weights.w + weights.b
    s_neg = f_neg @ weights.w + weights.b
    accuracy = float(np.mean(s_pos > s_neg))

    reciprocal_ranks = []
    cache: dict[tuple[str, str | None], np.ndarray] = {}
    for t in eval_triples:
        key = (t.query, t.context)
        if key not in cache:
            feats = feature_matrix(index, t.query, t.context, config, embedder)
            cache[key] = feats @ weights.w + weights.b
        scores = cache[key]
        order = sorted(range(len(index)), key=order_key(index, scores))
        position = order.index(index.unit_ordinal[t.positive_unit_id]) + 1
        reciprocal_ranks.append(1.0 / position)
    return {"pairwise_accuracy": accuracy, "mrr": float(np.mean(reciprocal_ranks))}
