import pytest

from blade.corpus import format_timestamp, parse_transcript, parse_transcript_text
from blade.errors import MalformedCue, MissingFile, NonMonotonicTimestamps


def test_two_cues_parse():
    cues = parse_transcript_text(
        "00:00:00.000 --> 00:00:30.000\nA\n\n00:00:30.000 --> 00:01:00.000\nB\n"
    )
    assert [(c[0].start_s, c[0].end_s, c[1]) for c in cues] == [
        (0.0, 30.0, "A"),
        (30.0, 60.0, "B"),
    ]


def test_webvtt_header_and_cue_ids_skipped():
    cues = parse_transcript_text(
        "WEBVTT\n\n1\n00:00:00.000 --> 00:00:05.500\nhello there\nsecond line\n\n"
        "2\n00:00:05.500 --> 00:00:09.000\nmore\n"
    )
    assert len(cues) == 2
    assert cues[0][1] == "hello there second line"
    assert cues[0][0].end_s == 5.5


def test_end_before_start_is_malformed():
    with pytest.raises(MalformedCue):
        parse_transcript_text("00:00:30.000 --> 00:00:10.000\nbackwards\n")


def test_end_equal_start_is_malformed():
    with pytest.raises(MalformedCue):
        parse_transcript_text("00:00:30.000 --> 00:00:30.000\nzero length\n")


def test_overlapping_cues_non_monotonic():
    with pytest.raises(NonMonotonicTimestamps) as exc:
        parse_transcript_text(
            "00:00:00.000 --> 00:00:30.000\nA\n\n00:00:20.000 --> 00:00:40.000\nB\n"
        )
    assert exc.value.line_no == 4


def test_touching_cues_allowed_and_gaps_allowed():
    cues = parse_transcript_text(
        "00:00:00.000 --> 00:00:30.000\nA\n\n00:00:45.000 --> 00:01:00.000\nB\n"
    )
    assert len(cues) == 2


def test_missing_payload_is_malformed():
    with pytest.raises(MalformedCue):
        parse_transcript_text("00:00:00.000 --> 00:00:30.000\n\n")


def test_garbage_line_is_malformed():
    with pytest.raises(MalformedCue):
        parse_transcript_text("not a cue at all\nstill not\n")


def test_milliseconds_optional():
    cues = parse_transcript_text("00:12:30 --> 00:14:05\nJaccard definition\n")
    assert cues[0][0].start_s == 750.0
    assert cues[0][0].end_s == 845.0


def test_missing_file():
    with pytest.raises(MissingFile):
        parse_transcript("/nonexistent/lecture.vtt")


def test_format_timestamp():
    assert format_timestamp(750) == "00:12:30"
    assert format_timestamp(845) == "00:14:05"
    assert format_timestamp(0) == "00:00:00"
    assert format_timestamp(3661.9) == "01:01:01"
