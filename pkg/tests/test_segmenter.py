import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blade.corpus import (
    SegmentationConfig,
    SlideNumber,
    TimeSpan,
    normalize_source,
    segment_slides,
    segment_text,
    segment_transcript,
    split_slides,
    transcript_source,
)
from blade.errors import EmptyDocument, EmptyTranscript
from blade.text import count_tokens
from conftest import make_resource, random_document
from oracles import check_segmentation

GREEK = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
         "iota", "kappa")


def lorem_chapter(n_sentences=100, per_paragraph=4) -> str:
    """Deterministic chapter: n_sentences of exactly 10 tokens each."""
    sentences = []
    for i in range(n_sentences):
        words = [GREEK[(i + j) % len(GREEK)] for j in range(10)]
        sentences.append(" ".join(words).capitalize() + ".")
    paragraphs = [
        " ".join(sentences[i:i + per_paragraph])
        for i in range(0, len(sentences), per_paragraph)
    ]
    return "\n\n".join(paragraphs)


def test_thousand_token_chapter_coverage_and_bounds():
    # 100 sentences x 10 tokens = 1000 tokens, no headings
    text = lorem_chapter()
    res = make_resource()
    cfg = SegmentationConfig(target_tokens=200, overlap_tokens=40)
    units = segment_text(res, text, cfg)
    check_segmentation(normalize_source(text), units, cfg)
    assert len(units) == 6  # frozen from the verified run of this fixture
    assert all(u.token_count <= 400 for u in units)
    # every split is mid-section here, so every consecutive pair shares
    # exactly overlap_tokens tokens
    norm = normalize_source(text)
    for a, b in zip(units, units[1:]):
        shared = norm[b.char_start:a.char_end]
        assert count_tokens(shared) == cfg.overlap_tokens


def test_short_text_single_unit():
    res = make_resource()
    text = " ".join(GREEK * 5)  # 50 tokens < target
    units = segment_text(res, text, SegmentationConfig(target_tokens=200, overlap_tokens=40))
    assert len(units) == 1
    assert units[0].seq == 0
    assert units[0].token_count == 50
    assert units[0].id == f"{res.id}#0"


def test_empty_document_raises():
    res = make_resource()
    with pytest.raises(EmptyDocument):
        segment_text(res, "", SegmentationConfig())
    with pytest.raises(EmptyDocument):
        segment_text(res, "   \n\n  ", SegmentationConfig())
    with pytest.raises(EmptyDocument):
        segment_text(res, "!!! ... ---", SegmentationConfig())  # no tokens at all


def test_oversized_sentence_token_window_fallback():
    res = make_resource()
    text = " ".join(GREEK[i % 10] for i in range(900))  # one 900-token "sentence"
    cfg = SegmentationConfig(target_tokens=100, overlap_tokens=10)
    units = segment_text(res, text, cfg)
    check_segmentation(normalize_source(text), units, cfg)
    assert all(u.token_count <= 200 for u in units)
    assert len(units) >= 9


def test_headings_start_fresh_units_without_overlap():
    res = make_resource()
    paragraph = " ".join(
        " ".join(GREEK[(i + j) % 10] for j in range(10)).capitalize() + "."
        for i in range(12)
    )
    text = f"# One\n\n{paragraph}\n\n# Two\n\n{paragraph}"
    cfg = SegmentationConfig(target_tokens=60, overlap_tokens=12)
    units = segment_text(res, text, cfg)
    norm = normalize_source(text)
    check_segmentation(norm, units, cfg)
    # the unit that begins at "# Two" must not reach back across the heading
    starts = [u for u in units if u.text.startswith("# Two")]
    assert starts, "expected a unit starting at the second heading"
    second = starts[0]
    prev = units[units.index(second) - 1]
    assert second.char_start >= prev.char_end
    assert second.locator.headings == ("Two",)


def test_section_path_follows_heading_stack():
    res = make_resource()
    text = "# Top\n\nIntro words here.\n\n## Sub\n\nMore words follow here."
    units = segment_text(res, text, SegmentationConfig(target_tokens=200, overlap_tokens=10))
    assert units[0].locator.headings == ("Top",)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_fuzzed_documents_satisfy_contract(seed):
    rng = random.Random(seed)
    res = make_resource()
    text = random_document(rng, n_paragraphs=rng.randint(1, 10))
    target = rng.randint(20, 120)
    cfg = SegmentationConfig(target_tokens=target, overlap_tokens=rng.randint(0, target // 2))
    units = segment_text(res, text, cfg)
    check_segmentation(normalize_source(text), units, cfg)


def test_segmentation_is_deterministic():
    rng = random.Random(42)
    res = make_resource()
    text = random_document(rng)
    cfg = SegmentationConfig(target_tokens=50, overlap_tokens=10)
    assert segment_text(res, text, cfg) == segment_text(res, text, cfg)


# --- slides -----------------------------------------------------------------


def test_slides_split_and_locators():
    res = make_resource(kind="slides")
    text = "First slide words here.\n---\nSecond slide has more words.\n---\nThird one."
    units = segment_slides(res, text, SegmentationConfig(target_tokens=50, overlap_tokens=5))
    assert [u.locator.n for u in units] == [1, 2, 3]
    norm, regions = split_slides(text)
    check_segmentation(norm, units, SegmentationConfig(target_tokens=50, overlap_tokens=5))
    assert "---" not in norm


def test_slides_empty_slides_keep_numbering():
    res = make_resource(kind="slides")
    text = "---\nReal slide two.\n---\n---\nSlide four."
    units = segment_slides(res, text, SegmentationConfig())
    assert [u.locator.n for u in units] == [2, 4]


def test_slides_units_never_cross_slides():
    res = make_resource(kind="slides")
    slides = [
        " ".join(GREEK[(i + j) % 10] for j in range(30)) for i in range(4)
    ]
    text = "\n---\n".join(slides)
    cfg = SegmentationConfig(target_tokens=20, overlap_tokens=4)
    units = segment_slides(res, text, cfg)
    norm, regions = split_slides(text)
    boundaries = {n: (a, b) for n, a, b in regions}
    for u in units:
        a, b = boundaries[u.locator.n]
        assert a <= u.char_start and u.char_end <= b


# --- transcripts ------------------------------------------------------------


def cues(*spans):
    return [(TimeSpan(a, b), f"cue {i} words") for i, (a, b) in enumerate(spans)]


def test_transcript_greedy_grouping():
    res = make_resource(kind="transcript")
    cfg = SegmentationConfig(transcript_window_s=90)
    units = segment_transcript(res, cues((0, 30), (30, 60), (60, 100)), cfg)
    spans = [(u.locator.start_s, u.locator.end_s) for u in units]
    assert spans == [(0, 60), (60, 100)]  # brute-force greedy check: 100-0 > 90 splits


def test_transcript_overlong_cue_forms_own_unit():
    res = make_resource(kind="transcript")
    cfg = SegmentationConfig(transcript_window_s=90)
    units = segment_transcript(res, cues((0, 200)), cfg)
    assert len(units) == 1
    assert (units[0].locator.start_s, units[0].locator.end_s) == (0, 200)


def test_transcript_every_cue_in_exactly_one_unit():
    res = make_resource(kind="transcript")
    cue_list = cues((0, 30), (30, 55), (55, 85), (85, 130), (130, 200), (200, 230))
    cfg = SegmentationConfig(transcript_window_s=75)
    units = segment_transcript(res, cue_list, cfg)
    norm = transcript_source(cue_list)
    # every cue text appears in exactly one unit; unit text is a slice of the
    # joined source
    for unit in units:
        assert norm[unit.char_start:unit.char_end] == unit.text
    for _, text in cue_list:
        assert sum(text in u.text for u in units) == 1
    # spans tile without overlap
    for a, b in zip(units, units[1:]):
        assert b.locator.start_s == a.locator.end_s or b.locator.start_s >= a.locator.end_s


def test_empty_transcript_raises():
    res = make_resource(kind="transcript")
    with pytest.raises(EmptyTranscript):
        segment_transcript(res, [], SegmentationConfig())
