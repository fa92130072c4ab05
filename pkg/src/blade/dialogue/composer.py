"""Response composition: citation rendering, excerpt selection, templates.

The template composer is the built-in deterministic generation backend. Its
output is assembled exclusively from template strings, display labels, and
verbatim excerpts, so it cannot state an answer that is not already in the
cited material; it always ends with a guiding question.
"""

from __future__ import annotations

from dataclasses import dataclass

from blade.corpus.transcript import format_timestamp
from blade.corpus.types import (
    InstructionalUnit,
    PageRange,
    SectionPath,
    SlideNumber,
    SourceLocator,
    TimeSpan,
)
from blade.dialogue.sessions import Citation, ResponsePolicy
from blade.dialogue.templates import TemplateSet
from blade.errors import NoPassages
from blade.index.build import CorpusIndex
from blade.index.retrieval import ScoredPassage
from blade.text import sentence_spans

EXCERPT_MAX_CHARS = 400


@dataclass(frozen=True)
class CitedPassage:
    """A retrieved unit bundled with its rendered citation."""

    unit: InstructionalUnit
    scored: ScoredPassage
    citation: Citation


def format_locator(locator: SourceLocator) -> str:
    if isinstance(locator, TimeSpan):
        return f"{format_timestamp(locator.start_s)}–{format_timestamp(locator.end_s)}"
    if isinstance(locator, PageRange):
        return f"pp. {locator.start}–{locator.end}"
    if isinstance(locator, SlideNumber):
        return f"slide {locator.n}"
    if isinstance(locator, SectionPath):
        return " / ".join(locator.headings)
    raise TypeError(f"not a locator: {locator!r}")


def select_excerpt(text: str, limit: int = EXCERPT_MAX_CHARS) -> str:
    """Longest prefix of whole sentences within `limit` characters.

    Falls back to a whitespace cut, then a hard cut, when even the first
    sentence is too long. Always a contiguous verbatim substring.
    """
    if len(text) <= limit:
        return text
    best = 0
    for _, end in sentence_spans(text):
        if end <= limit:
            best = end
        else:
            break
    if best == 0:
        cut = text.rfind(" ", 0, limit + 1)
        best = cut if cut > 0 else limit
    return text[:best]


def render_citation(index: CorpusIndex, unit: InstructionalUnit,
                    excerpt: str | None = None) -> Citation:
    resource = index.resource_of(unit)
    title = resource.title if resource is not None else unit.resource_id
    located = format_locator(unit.locator)
    label = f"{title}, {located}" if located else title
    return Citation(
        unit_id=unit.id,
        display_label=label,
        excerpt=excerpt if excerpt is not None else select_excerpt(unit.text),
    )


def compose_template_response(query: str, passages: list[CitedPassage],
                              policy: ResponsePolicy, templates: TemplateSet,
                              query_topics: frozenset[str] = frozenset()) -> str:
    """Deterministic template composition over the cited passages."""
    if not passages:
        raise NoPassages("cannot compose a response without passages")
    topic = min(query_topics) if query_topics else None
    blocks = []
    if topic is not None:
        blocks.append(templates.render("intro_topic", topic=topic))
    else:
        blocks.append(templates.render("intro_generic"))
    for cited in passages[: policy.max_citations]:
        blocks.append(
            templates.render(
                "pointer",
                resource_label=cited.citation.display_label,
                excerpt=cited.citation.excerpt,
            )
        )
    if topic is not None:
        blocks.append(templates.render("question_topic", topic=topic))
    else:
        blocks.append(templates.render("question_generic"))
    return "\n\n".join(blocks)
