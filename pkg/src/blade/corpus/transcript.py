"""WebVTT-compatible transcript cue parsing.

Accepted subset: an optional "WEBVTT" header, blank-line-separated cue
blocks, each an optional numeric cue identifier line, a timing line

    HH:MM:SS.mmm --> HH:MM:SS.mmm

(milliseconds optional) and one or more payload lines. Payload lines of one
cue are joined with a single space. Cues must be ordered by start time, must
not overlap, and must carry non-empty payload text.
"""

from __future__ import annotations

import re
from pathlib import Path

from blade.corpus.types import TimeSpan
from blade.errors import MalformedCue, MissingFile, NonMonotonicTimestamps

_TIMESTAMP = r"(\d{1,2}):([0-5]\d):([0-5]\d)(?:\.(\d{3}))?"
_CUE_TIMING_RE = re.compile(rf"^{_TIMESTAMP}\s+-->\s+{_TIMESTAMP}\s*$")
_ARROW_RE = re.compile(r"-->")


def _to_seconds(h: str, m: str, s: str, ms: str | None) -> float:
    return int(h) * 3600 + int(m) * 60 + int(s) + (int(ms) / 1000.0 if ms else 0.0)


def format_timestamp(seconds: float) -> str:
    """Seconds -> HH:MM:SS (fractional part dropped; used in labels)."""
    total = int(seconds)
    return f"{total // 3600:02d}:{total % 3600 // 60:02d}:{total % 60:02d}"


def parse_transcript(path: str | Path) -> list[tuple[TimeSpan, str]]:
    path = Path(path)
    if not path.is_file():
        raise MissingFile(path)
    return parse_transcript_text(path.read_text(encoding="utf-8"))


def parse_transcript_text(content: str) -> list[tuple[TimeSpan, str]]:
    lines = content.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    cues: list[tuple[TimeSpan, str]] = []
    i = 0
    n = len(lines)
    # optional header block
    if i < n and lines[i].strip().startswith("WEBVTT"):
        i += 1
        while i < n and lines[i].strip():
            i += 1
    while i < n:
        if not lines[i].strip():
            i += 1
            continue
        # optional cue identifier line directly above the timing line
        if _ARROW_RE.search(lines[i]) is None:
            i += 1
            if i >= n or _ARROW_RE.search(lines[i]) is None:
                raise MalformedCue(i, "expected a cue timing line")
        timing_line_no = i + 1  # 1-based for error reporting
        m = _CUE_TIMING_RE.match(lines[i].strip())
        if m is None:
            raise MalformedCue(timing_line_no, f"bad timing line: {lines[i].strip()!r}")
        start = _to_seconds(*m.groups()[0:4])
        end = _to_seconds(*m.groups()[4:8])
        if end <= start:
            raise MalformedCue(timing_line_no, f"cue ends at or before its start ({start}s..{end}s)")
        i += 1
        payload: list[str] = []
        while i < n and lines[i].strip():
            payload.append(lines[i].strip())
            i += 1
        text = " ".join(payload)
        if not text:
            raise MalformedCue(timing_line_no, "cue has no payload text")
        if cues and start < cues[-1][0].end_s:
            raise NonMonotonicTimestamps(timing_line_no)
        cues.append((TimeSpan(start, end), text))
    return cues
