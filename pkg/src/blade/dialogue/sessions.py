"""Conversational sessions, turns, and citations."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone

from blade.index.retrieval import FeatureVector, ScoredPassage

STUDENT = "student"
ASSISTANT = "assistant"


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class Citation:
    """A resolvable pointer into the corpus.

    excerpt is a contiguous verbatim substring of the cited unit's text
    (at most 400 characters); display_label is rendered from the unit's
    source locator.
    """

    unit_id: str
    display_label: str
    excerpt: str


@dataclass(frozen=True)
class ResponsePolicy:
    mode: str = "withhold_answers"
    max_citations: int = 4
    template_set_id: str = "default-v1"

    def __post_init__(self):
        if self.mode != "withhold_answers":
            raise ValueError("this engine only supports the withhold_answers mode")
        if self.max_citations < 1:
            raise ValueError("max_citations must be >= 1")


@dataclass(frozen=True)
class DialogueTurn:
    role: str
    text: str
    citations: tuple[Citation, ...] = ()
    retrieved: tuple[ScoredPassage, ...] = ()
    no_results: bool = False
    created_at: str = ""

    def __post_init__(self):
        if self.role not in (STUDENT, ASSISTANT):
            raise ValueError(f"bad role {self.role!r}")
        if self.role == STUDENT and self.citations:
            raise ValueError("student turns carry no citations")
        object.__setattr__(self, "citations", tuple(self.citations))
        object.__setattr__(self, "retrieved", tuple(self.retrieved))


@dataclass
class Session:
    id: str
    course_id: str
    current_module: str | None = None
    turns: list[DialogueTurn] = field(default_factory=list)
    created_at: str = field(default_factory=utc_now_iso)
    updated_at: str = ""

    def __post_init__(self):
        if not self.updated_at:
            self.updated_at = self.created_at

    def append_turn(self, turn: DialogueTurn) -> None:
        self.turns.append(turn)
        if turn.created_at:
            self.updated_at = turn.created_at


def citation_to_dict(c: Citation) -> dict:
    return {"unit_id": c.unit_id, "display_label": c.display_label, "excerpt": c.excerpt}


def scored_to_dict(p: ScoredPassage) -> dict:
    return {
        "unit_id": p.unit_id,
        "score": p.score,
        "rank": p.rank,
        "features": list(p.features.as_array()),
    }


def turn_to_dict(turn: DialogueTurn) -> dict:
    return {
        "role": turn.role,
        "text": turn.text,
        "citations": [citation_to_dict(c) for c in turn.citations],
        "retrieved": [scored_to_dict(p) for p in turn.retrieved],
        "no_results": turn.no_results,
        "created_at": turn.created_at,
    }


def turn_from_dict(data: dict) -> DialogueTurn:
    return DialogueTurn(
        role=data["role"],
        text=data["text"],
        citations=tuple(
            Citation(c["unit_id"], c["display_label"], c["excerpt"])
            for c in data.get("citations", [])
        ),
        retrieved=tuple(
            ScoredPassage(
                unit_id=p["unit_id"],
                features=FeatureVector(*p["features"]),
                score=p["score"],
                rank=p["rank"],
            )
            for p in data.get("retrieved", [])
        ),
        no_results=data.get("no_results", False),
        created_at=data.get("created_at", ""),
    )
