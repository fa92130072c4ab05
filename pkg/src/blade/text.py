"""Deterministic text primitives shared across the engine.

One tokenizer, one sentence splitter, used everywhere (segmentation, BM25,
the hashing embedder, grounding checks). Both are plain regex passes so the
same input yields the same output on every platform: tokens are maximal
alphanumeric runs, lowercased; sentences end at ./!/? (plus closing quotes
or brackets) followed by whitespace or end of text.
"""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"[0-9A-Za-z]+")
_SENTENCE_END_RE = re.compile(r"[.!?]+[\"'”’)\]]*(?=\s|$)")


def tokenize(text: str) -> list[str]:
    """Lowercased alphanumeric tokens in document order."""
    return [m.group(0).lower() for m in _TOKEN_RE.finditer(text)]


def token_spans(text: str) -> list[tuple[int, int]]:
    """(start, end) character span of each token, same order as tokenize()."""
    return [m.span() for m in _TOKEN_RE.finditer(text)]


def count_tokens(text: str) -> int:
    return sum(1 for _ in _TOKEN_RE.finditer(text))


def sentence_spans(text: str, start: int = 0, end: int | None = None) -> list[tuple[int, int]]:
    """Sentence (start, end) spans within text[start:end].

    Spans exclude surrounding whitespace; every non-whitespace character of
    the region belongs to exactly one span. A region without terminal
    punctuation is one sentence.
    """
    if end is None:
        end = len(text)
    spans: list[tuple[int, int]] = []
    pos = start
    while pos < end:
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end:
            break
        m = _SENTENCE_END_RE.search(text, pos, end)
        stop = m.end() if m else end
        while stop > pos and text[stop - 1].isspace():
            stop -= 1
        spans.append((pos, stop))
        pos = stop
    return spans


def split_sentences(text: str) -> list[str]:
    return [text[a:b] for a, b in sentence_spans(text)]
