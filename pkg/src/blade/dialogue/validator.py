"""Response validation: citation integrity and (for remote drafts) grounding.

Every candidate response is checked before delivery:

  1. it carries at least one citation,
  2. every citation resolves to a corpus unit,
  3. every excerpt is a contiguous verbatim substring of its unit's text,
  4. remote drafts only: every sentence either matches a template-family
     sentence or shares at least half of its tokens with some cited excerpt.

Template-backend output passes by construction; a rejection of a remote
draft triggers the template fallback in the engine.
"""

from __future__ import annotations

from blade.dialogue.sessions import Citation
from blade.dialogue.templates import TemplateSet
from blade.errors import ValidationFailed
from blade.index.build import CorpusIndex
from blade.text import split_sentences, tokenize

GROUNDING_MIN_OVERLAP = 0.5


def sentence_overlap(sentence: str, excerpt_tokens: frozenset[str]) -> float:
    """Fraction of the sentence's distinct tokens present in the excerpt."""
    tokens = set(tokenize(sentence))
    if not tokens:
        return 1.0
    return len(tokens & excerpt_tokens) / len(tokens)


def validate_response(text: str, citations: list[Citation], index: CorpusIndex,
                      remote: bool = False, templates: TemplateSet | None = None) -> str:
    """Return the text unchanged if valid, else raise ValidationFailed."""
    reasons: list[str] = []
    if not text.strip():
        reasons.append("empty draft")
    if not citations:
        reasons.append("no citations")
    for citation in citations:
        ordinal = index.unit_ordinal.get(citation.unit_id)
        if ordinal is None:
            reasons.append(f"unresolved citation {citation.unit_id!r}")
            continue
        if len(citation.excerpt) > 400:
            reasons.append(f"excerpt too long for {citation.unit_id!r}")
        if citation.excerpt not in index.units[ordinal].text:
            reasons.append(f"excerpt not verbatim for {citation.unit_id!r}")
    if remote and not reasons:
        if templates is None:
            reasons.append("grounding check requires a template set")
        else:
            patterns = templates.sentence_patterns()
            excerpt_tokens = [
                frozenset(tokenize(c.excerpt)) for c in citations
            ]
            for sentence in split_sentences(text):
                if any(p.match(sentence) for p in patterns):
                    continue
                if any(
                    sentence_overlap(sentence, toks) >= GROUNDING_MIN_OVERLAP
                    for toks in excerpt_tokens
                ):
                    continue
                reasons.append(f"ungrounded sentence: {sentence[:60]!r}")
    if reasons:
        raise ValidationFailed(reasons)
    return text
