"""Segmentation of course materials into instructional units.

Strategy: structural boundaries first (headings, then paragraph breaks, then
sentence breaks), with a token-window fallback for pathological single
sentences. Deterministic by construction; no model in the loop.

Every unit is a contiguous character slice of the resource's *normalized
source text* and records its slice (char_start/char_end), which makes the
coverage and verbatim-excerpt invariants checkable by plain string
comparison:

  - text documents: the normalized file content (line endings unified,
    trailing whitespace stripped per line);
  - slide decks: the normalized texts of the non-empty slides joined with
    blank lines ('---' delimiter lines are dropped);
  - transcripts: the cue payloads joined with newlines.

Units aim at target_tokens tokens and never exceed 2*target_tokens.
Consecutive units overlap by overlap_tokens tokens when a split falls inside
a section (paragraph or sentence boundary); a split at a heading starts the
next unit fresh. If the text before a forced split is shorter than
overlap_tokens, the overlap is capped at that length.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass

from blade.corpus.types import (
    InstructionalUnit,
    Resource,
    SectionPath,
    SegmentationConfig,
    SlideNumber,
    TimeSpan,
)
from blade.errors import EmptyDocument, EmptyTranscript
from blade.text import sentence_spans, token_spans

_HEADING_RE = re.compile(r"^(#{1,6})\s+(\S.*)$")
_SLIDE_DELIM_RE = re.compile(r"^---+\s*$")


def normalize_source(text: str) -> str:
    """Unify line endings, strip per-line trailing whitespace and outer blank lines."""
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    return "\n".join(line.rstrip() for line in lines).strip("\n")


@dataclass
class _Atom:
    """Smallest packable piece: one sentence or one heading line."""

    char_start: int
    char_end: int
    tok_start: int
    tok_end: int
    new_block: bool
    new_section: bool
    section: tuple[str, ...]


@dataclass
class _Piece:
    char_start: int
    char_end: int
    tok_start: int
    tok_end: int
    section: tuple[str, ...]


def _parse_atoms(norm: str, spans: list[tuple[int, int]], base: int = 0, end: int | None = None,
                 ) -> list[_Atom]:
    """Split norm[base:end] into heading and sentence atoms with section stacks."""
    if end is None:
        end = len(norm)
    tok_starts = [s for s, _ in spans]

    def tok_range(cs: int, ce: int) -> tuple[int, int]:
        lo = bisect.bisect_left(tok_starts, cs)
        hi = bisect.bisect_left(tok_starts, ce)
        return lo, hi

    atoms: list[_Atom] = []
    stack: list[str] = []
    para_lines: list[tuple[int, int]] = []

    def flush_paragraph():
        if not para_lines:
            return
        ps, pe = para_lines[0][0], para_lines[-1][1]
        first = True
        for ss, se in sentence_spans(norm, ps, pe):
            ts, te = tok_range(ss, se)
            atoms.append(_Atom(ss, se, ts, te, new_block=first, new_section=False,
                               section=tuple(stack)))
            first = False
        para_lines.clear()

    for raw_line in _iter_lines(norm, base, end):
        ls, le = raw_line
        line = norm[ls:le]
        if not line.strip():
            flush_paragraph()
            continue
        m = _HEADING_RE.match(line)
        if m:
            flush_paragraph()
            level = len(m.group(1))
            del stack[level - 1:]
            stack.append(m.group(2).strip())
            ts, te = tok_range(ls, le)
            atoms.append(_Atom(ls, le, ts, te, new_block=True, new_section=True,
                               section=tuple(stack)))
        else:
            para_lines.append((ls, le))
    flush_paragraph()
    return atoms


def _iter_lines(norm: str, base: int, end: int):
    pos = base
    while pos <= end:
        nl = norm.find("\n", pos, end)
        if nl == -1:
            if pos < end:
                yield (pos, end)
            break
        yield (pos, nl)
        pos = nl + 1


def _pack(atoms: list[_Atom], spans: list[tuple[int, int]], cfg: SegmentationConfig,
          ) -> list[_Piece]:
    target = cfg.target_tokens
    overlap = cfg.overlap_tokens
    hard_cap = 2 * target
    pieces: list[_Piece] = []

    # tokens from each atom to the end of its block, for paragraph-preferring splits
    block_rest = [0] * len(atoms)
    acc = 0
    for i in range(len(atoms) - 1, -1, -1):
        if i < len(atoms) - 1 and atoms[i + 1].new_block:
            acc = 0
        acc += atoms[i].tok_end - atoms[i].tok_start
        block_rest[i] = acc

    cur: _Piece | None = None
    carry: tuple[int, int] | None = None  # (char_start, tok_start) of the next unit's overlap prefix

    def emit(piece: _Piece):
        if piece.tok_end > piece.tok_start:
            pieces.append(piece)
        elif pieces:
            pieces[-1].char_end = piece.char_end

    def close(next_atom: _Atom | None):
        """Close cur; set up overlap when the split stays inside a section."""
        nonlocal cur, carry
        assert cur is not None
        emit(cur)
        carry = None
        if (
            next_atom is not None
            and not next_atom.new_section
            and overlap > 0
            and next_atom.tok_end - next_atom.tok_start <= hard_cap
        ):
            new_ts = max(cur.tok_start, cur.tok_end - overlap)
            if new_ts < cur.tok_end:
                carry = (spans[new_ts][0], new_ts)
        cur = None

    i = 0
    while i < len(atoms):
        atom = atoms[i]
        a_tokens = atom.tok_end - atom.tok_start
        if cur is None:
            if a_tokens > hard_cap:
                pieces.extend(_window_split(atom, spans, target, overlap))
                carry = None
                i += 1
                continue
            if carry is not None:
                cs, ts = carry
                carry = None
            else:
                cs, ts = atom.char_start, atom.tok_start
            cur = _Piece(cs, atom.char_end, ts, atom.tok_end, atom.section)
            i += 1
        else:
            if (cur.tok_end - cur.tok_start) + a_tokens > hard_cap:
                close(next_atom=atom)
                continue
            cur.char_end = atom.char_end
            cur.tok_end = atom.tok_end
            i += 1
        if cur.tok_end - cur.tok_start >= target:
            if i >= len(atoms):
                break
            nxt = atoms[i]
            if not nxt.new_block:
                # mid-paragraph: hold out for the paragraph end if it fits
                if (cur.tok_end - cur.tok_start) + block_rest[i] <= hard_cap:
                    continue
            close(next_atom=nxt)
    if cur is not None:
        emit(cur)
    return pieces


def _window_split(atom: _Atom, spans: list[tuple[int, int]], target: int, overlap: int,
                  ) -> list[_Piece]:
    """Token-window fallback for a single atom longer than the hard cap."""
    out: list[_Piece] = []
    ts = atom.tok_start
    while ts < atom.tok_end:
        te = min(ts + target, atom.tok_end)
        cs = atom.char_start if ts == atom.tok_start else spans[ts][0]
        ce = atom.char_end if te == atom.tok_end else spans[te - 1][1]
        out.append(_Piece(cs, ce, ts, te, atom.section))
        if te == atom.tok_end:
            break
        ts = te - overlap
    return out


def _pieces_to_units(resource: Resource, norm: str, pieces: list[_Piece],
                     make_locator) -> list[InstructionalUnit]:
    units = []
    for seq, piece in enumerate(pieces):
        units.append(
            InstructionalUnit(
                id=f"{resource.id}#{seq}",
                resource_id=resource.id,
                seq=seq,
                text=norm[piece.char_start:piece.char_end],
                locator=make_locator(piece),
                topics=resource.topics,
                objectives=resource.objectives,
                token_count=piece.tok_end - piece.tok_start,
                char_start=piece.char_start,
                char_end=piece.char_end,
            )
        )
    return units


def segment_text(resource: Resource, text: str, cfg: SegmentationConfig,
                 ) -> list[InstructionalUnit]:
    """Segment a textbook/reading/notebook document."""
    norm = normalize_source(text)
    if not norm:
        raise EmptyDocument(f"resource {resource.id!r}: empty document")
    spans = token_spans(norm)
    if not spans:
        raise EmptyDocument(f"resource {resource.id!r}: document has no tokens")
    atoms = _parse_atoms(norm, spans)
    pieces = _pack(atoms, spans, cfg)
    return _pieces_to_units(resource, norm, pieces,
                            lambda p: SectionPath(p.section))


def split_slides(text: str) -> tuple[str, list[tuple[int, int, int]]]:
    """Normalize a slide deck.

    Returns (normalized deck text, regions) where each region is
    (slide_number, char_start, char_end) into the normalized text. Delimiter
    lines are dropped; empty slides keep their number but get no region.
    """
    raw_norm = normalize_source(text)
    slide_texts: list[str] = []
    numbers: list[int] = []
    current: list[str] = []
    slide_no = 1
    for line in raw_norm.split("\n") if raw_norm else []:
        if _SLIDE_DELIM_RE.match(line):
            body = "\n".join(current).strip("\n")
            if body:
                slide_texts.append(body)
                numbers.append(slide_no)
            current = []
            slide_no += 1
        else:
            current.append(line)
    body = "\n".join(current).strip("\n")
    if body:
        slide_texts.append(body)
        numbers.append(slide_no)

    norm = "\n\n".join(slide_texts)
    regions = []
    offset = 0
    for number, body in zip(numbers, slide_texts):
        regions.append((number, offset, offset + len(body)))
        offset += len(body) + 2
    return norm, regions


def segment_slides(resource: Resource, text: str, cfg: SegmentationConfig,
                   ) -> list[InstructionalUnit]:
    """Segment a slide deck; every unit stays within one slide."""
    norm, regions = split_slides(text)
    if not norm:
        raise EmptyDocument(f"resource {resource.id!r}: empty deck")
    spans = token_spans(norm)
    if not spans:
        raise EmptyDocument(f"resource {resource.id!r}: deck has no tokens")
    all_pieces: list[tuple[_Piece, int]] = []
    for number, rs, re_ in regions:
        atoms = _parse_atoms(norm, spans, base=rs, end=re_)
        for piece in _pack(atoms, spans, cfg):
            all_pieces.append((piece, number))
    units = []
    for seq, (piece, number) in enumerate(all_pieces):
        units.append(
            InstructionalUnit(
                id=f"{resource.id}#{seq}",
                resource_id=resource.id,
                seq=seq,
                text=norm[piece.char_start:piece.char_end],
                locator=SlideNumber(number),
                topics=resource.topics,
                objectives=resource.objectives,
                token_count=piece.tok_end - piece.tok_start,
                char_start=piece.char_start,
                char_end=piece.char_end,
            )
        )
    return units


def transcript_source(cues: list[tuple[TimeSpan, str]]) -> str:
    return "\n".join(text for _, text in cues)


def segment_transcript(resource: Resource, cues: list[tuple[TimeSpan, str]],
                       cfg: SegmentationConfig) -> list[InstructionalUnit]:
    """Group cues greedily into units spanning at most transcript_window_s.

    A single cue longer than the window forms its own unit. Every cue lands
    in exactly one unit; the unit locator spans first cue start to last cue
    end.
    """
    if not cues:
        raise EmptyTranscript(f"resource {resource.id!r}: transcript has no cues")
    window = cfg.transcript_window_s
    groups: list[list[int]] = [[0]]
    for i in range(1, len(cues)):
        group_start = cues[groups[-1][0]][0].start_s
        if cues[i][0].end_s - group_start <= window:
            groups[-1].append(i)
        else:
            groups.append([i])

    norm = transcript_source(cues)
    offsets = []
    pos = 0
    for _, text in cues:
        offsets.append((pos, pos + len(text)))
        pos += len(text) + 1

    units = []
    for seq, group in enumerate(groups):
        cs = offsets[group[0]][0]
        ce = offsets[group[-1]][1]
        units.append(
            InstructionalUnit(
                id=f"{resource.id}#{seq}",
                resource_id=resource.id,
                seq=seq,
                text=norm[cs:ce],
                locator=TimeSpan(cues[group[0]][0].start_s, cues[group[-1]][0].end_s),
                topics=resource.topics,
                objectives=resource.objectives,
                char_start=cs,
                char_end=ce,
            )
        )
    return units
