"""Domain types for course content: resources, locators, instructional units.

An InstructionalUnit is the atomic retrievable fragment. Units are cut from a
resource's *normalized source text* (see blade.corpus.segmenter) and remember
the character span they were cut from, so excerpt verification and coverage
checks are exact string operations rather than heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from blade.text import count_tokens

RESOURCE_KINDS = ("textbook", "slides", "transcript", "reading", "notebook")


@dataclass(frozen=True)
class PageRange:
    start: int
    end: int

    def __post_init__(self):
        if self.start < 1 or self.end < self.start:
            raise ValueError(f"bad page range {self.start}..{self.end}")


@dataclass(frozen=True)
class SlideNumber:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"bad slide number {self.n}")


@dataclass(frozen=True)
class TimeSpan:
    start_s: float
    end_s: float

    def __post_init__(self):
        if self.start_s < 0 or self.end_s <= self.start_s:
            raise ValueError(f"bad time span {self.start_s}..{self.end_s}")


@dataclass(frozen=True)
class SectionPath:
    headings: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "headings", tuple(self.headings))


SourceLocator = Union[PageRange, SlideNumber, TimeSpan, SectionPath]


@dataclass(frozen=True)
class Resource:
    """One course material file plus its curriculum metadata."""

    id: str
    title: str
    kind: str
    module_tag: str
    path: Path
    topics: frozenset[str] = frozenset()
    objectives: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.kind not in RESOURCE_KINDS:
            raise ValueError(f"unknown resource kind {self.kind!r}")
        if not self.module_tag:
            raise ValueError("module_tag must be non-empty")
        object.__setattr__(self, "path", Path(self.path))
        object.__setattr__(self, "topics", frozenset(self.topics))
        object.__setattr__(self, "objectives", frozenset(self.objectives))


@dataclass(frozen=True)
class SegmentationConfig:
    target_tokens: int = 200
    overlap_tokens: int = 40
    transcript_window_s: float = 90.0

    def __post_init__(self):
        if self.target_tokens < 1:
            raise ValueError("target_tokens must be positive")
        if not 0 <= self.overlap_tokens < self.target_tokens:
            raise ValueError("overlap_tokens must be in [0, target_tokens)")
        if self.transcript_window_s <= 0:
            raise ValueError("transcript_window_s must be positive")


@dataclass(frozen=True)
class CorpusManifest:
    course_id: str
    resources: tuple[Resource, ...]
    segmentation: SegmentationConfig = field(default_factory=SegmentationConfig)

    def __post_init__(self):
        object.__setattr__(self, "resources", tuple(self.resources))
        if not self.resources:
            raise ValueError("manifest needs at least one resource")


@dataclass(frozen=True)
class InstructionalUnit:
    """A semantically coherent fragment of one resource.

    topics is the union of the parent resource's topics and any local tags;
    char_start/char_end locate `text` inside the resource's normalized source
    (-1/-1 for units built directly rather than by segmentation).
    """

    id: str
    resource_id: str
    seq: int
    text: str
    locator: SourceLocator
    topics: frozenset[str] = frozenset()
    objectives: frozenset[str] = frozenset()
    token_count: int = -1
    char_start: int = -1
    char_end: int = -1

    def __post_init__(self):
        if not self.text:
            raise ValueError("unit text must be non-empty")
        if self.seq < 0:
            raise ValueError("seq must be >= 0")
        object.__setattr__(self, "topics", frozenset(self.topics))
        object.__setattr__(self, "objectives", frozenset(self.objectives))
        if self.token_count < 0:
            object.__setattr__(self, "token_count", count_tokens(self.text))


def locator_to_dict(locator: SourceLocator) -> dict:
    if isinstance(locator, PageRange):
        return {"type": "page_range", "start": locator.start, "end": locator.end}
    if isinstance(locator, SlideNumber):
        return {"type": "slide", "n": locator.n}
    if isinstance(locator, TimeSpan):
        return {"type": "time_span", "start_s": locator.start_s, "end_s": locator.end_s}
    if isinstance(locator, SectionPath):
        return {"type": "section_path", "headings": list(locator.headings)}
    raise TypeError(f"not a locator: {locator!r}")


def locator_from_dict(data: dict) -> SourceLocator:
    kind = data.get("type")
    if kind == "page_range":
        return PageRange(data["start"], data["end"])
    if kind == "slide":
        return SlideNumber(data["n"])
    if kind == "time_span":
        return TimeSpan(data["start_s"], data["end_s"])
    if kind == "section_path":
        return SectionPath(tuple(data["headings"]))
    raise ValueError(f"unknown locator type {kind!r}")


def unit_to_dict(unit: InstructionalUnit) -> dict:
    """JSON-ready record; sets serialized sorted so dumps are byte-stable."""
    return {
        "id": unit.id,
        "resource_id": unit.resource_id,
        "seq": unit.seq,
        "text": unit.text,
        "locator": locator_to_dict(unit.locator),
        "topics": sorted(unit.topics),
        "objectives": sorted(unit.objectives),
        "token_count": unit.token_count,
        "char_start": unit.char_start,
        "char_end": unit.char_end,
    }


def unit_from_dict(data: dict) -> InstructionalUnit:
    return InstructionalUnit(
        id=data["id"],
        resource_id=data["resource_id"],
        seq=data["seq"],
        text=data["text"],
        locator=locator_from_dict(data["locator"]),
        topics=frozenset(data.get("topics", ())),
        objectives=frozenset(data.get("objectives", ())),
        token_count=data.get("token_count", -1),
        char_start=data.get("char_start", -1),
        char_end=data.get("char_end", -1),
    )
