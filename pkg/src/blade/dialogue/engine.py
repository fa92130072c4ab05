"""The query -> evidence-pointing response pipeline.

answer_query retrieves twice as many passages as the citation budget, drops
everything below the retrieval floor (the score of an all-zero feature
vector plus a fixed margin, which defines the no-results path), renders
citations, composes a draft with the configured backend, validates it, and
falls back to the deterministic template backend on any backend failure or
validation rejection. It never fails because of the backend.
"""

from __future__ import annotations

from typing import Callable

from blade.dialogue.backends import GenerationBackend, TemplateBackend
from blade.dialogue.composer import CitedPassage, render_citation
from blade.dialogue.sessions import (
    ASSISTANT,
    STUDENT,
    DialogueTurn,
    ResponsePolicy,
    Session,
    utc_now_iso,
)
from blade.dialogue.templates import TemplateSet, default_template_set
from blade.dialogue.validator import validate_response
from blade.errors import BackendUnavailable, EmptyQuery, ValidationFailed
from blade.index.build import CorpusIndex
from blade.index.retrieval import RankerWeights, RankingConfig, query_topic_tags, rank

SCORE_FLOOR_MARGIN = 0.05


def retrieval_floor(weights: RankerWeights) -> float:
    """Passages scoring below the all-zero-feature score plus the margin are
    treated as no result."""
    return weights.b + SCORE_FLOOR_MARGIN


def answer_query(session: Session, query_text: str, index: CorpusIndex,
                 weights: RankerWeights, policy: ResponsePolicy,
                 templates: TemplateSet | None = None,
                 backend: GenerationBackend | None = None,
                 config: RankingConfig | None = None, embedder=None,
                 clock: Callable[[], str] = utc_now_iso) -> DialogueTurn:
    query = query_text.strip()
    if not query:
        raise EmptyQuery("query text is empty")
    templates = templates or default_template_set()
    backend = backend or TemplateBackend(templates)

    retrieved = rank(
        index, query, session.current_module, weights,
        k=2 * policy.max_citations, config=config, embedder=embedder,
    )
    floor = retrieval_floor(weights)
    kept = [p for p in retrieved if p.score >= floor][: policy.max_citations]

    session.append_turn(DialogueTurn(role=STUDENT, text=query, created_at=clock()))

    if not kept:
        turn = DialogueTurn(
            role=ASSISTANT,
            text=templates.get("no_results"),
            citations=(),
            retrieved=tuple(retrieved),
            no_results=True,
            created_at=clock(),
        )
        session.append_turn(turn)
        return turn

    topics = query_topic_tags(index, query)
    cited = [
        CitedPassage(
            unit=index.unit(p.unit_id),
            scored=p,
            citation=render_citation(index, index.unit(p.unit_id)),
        )
        for p in kept
    ]
    citations = [c.citation for c in cited]

    text = None
    try:
        draft = backend.compose(query, cited, policy, topics)
        text = validate_response(draft, citations, index,
                                 remote=backend.is_remote, templates=templates)
    except (BackendUnavailable, ValidationFailed):
        text = None
    if text is None:
        fallback = TemplateBackend(templates)
        draft = fallback.compose(query, cited, policy, topics)
        text = validate_response(draft, citations, index, remote=False,
                                 templates=templates)

    turn = DialogueTurn(
        role=ASSISTANT,
        text=text,
        citations=tuple(citations),
        retrieved=tuple(retrieved),
        no_results=False,
        created_at=clock(),
    )
    session.append_turn(turn)
    return turn
