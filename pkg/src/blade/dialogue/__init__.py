"""Dialogue: sessions, answer-withholding composition, citation validation."""

from blade.dialogue.backends import (
    GenerationBackend,
    RemoteBackend,
    RemoteBackendConfig,
    TemplateBackend,
)
from blade.dialogue.composer import (
    EXCERPT_MAX_CHARS,
    CitedPassage,
    compose_template_response,
    format_locator,
    render_citation,
    select_excerpt,
)
from blade.dialogue.engine import SCORE_FLOOR_MARGIN, answer_query, retrieval_floor
from blade.dialogue.sessions import (
    ASSISTANT,
    STUDENT,
    Citation,
    DialogueTurn,
    ResponsePolicy,
    Session,
    turn_from_dict,
    turn_to_dict,
)
from blade.dialogue.templates import TemplateSet, default_template_set, load_template_set
from blade.dialogue.validator import GROUNDING_MIN_OVERLAP, sentence_overlap, validate_response

__all__ = [
    "ASSISTANT",
    "Citation",
    "CitedPassage",
    "DialogueTurn",
    "EXCERPT_MAX_CHARS",
    "GROUNDING_MIN_OVERLAP",
    "GenerationBackend",
    "RemoteBackend",
    "RemoteBackendConfig",
    "ResponsePolicy",
    "SCORE_FLOOR_MARGIN",
    "STUDENT",
    "Session",
    "TemplateBackend",
    "TemplateSet",
    "answer_query",
    "compose_template_response",
    "default_template_set",
    "format_locator",
    "load_template_set",
    "render_citation",
    "retrieval_floor",
    "select_excerpt",
    "sentence_overlap",
    "turn_from_dict",
    "turn_to_dict",
    "validate_response",
]
