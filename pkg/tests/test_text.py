from hypothesis import given
from hypothesis import strategies as st

from blade.text import count_tokens, sentence_spans, split_sentences, token_spans, tokenize


def test_tokenize_lowercases_and_splits_on_punctuation():
    assert tokenize("The cat's mat.") == ["the", "cat", "s", "mat"]
    assert tokenize("BM25, k1=1.2!") == ["bm25", "k1", "1", "2"]
    assert tokenize("") == []
    assert tokenize("...") == []


def test_token_spans_match_tokens():
    text = "Alpha, beta. GAMMA-42"
    spans = token_spans(text)
    assert [text[a:b].lower() for a, b in spans] == tokenize(text)
    assert count_tokens(text) == len(spans)


def test_sentence_split_basic():
    text = "First sentence. Second one! Third?"
    assert split_sentences(text) == ["First sentence.", "Second one!", "Third?"]


def test_sentence_split_without_terminal_punctuation():
    assert split_sentences("no punctuation here") == ["no punctuation here"]


def test_sentence_split_keeps_closing_quotes():
    text = 'He said "stop." Then left.'
    assert split_sentences(text) == ['He said "stop."', "Then left."]


@given(st.text(max_size=300))
def test_sentence_spans_cover_all_non_whitespace(text):
    covered = [False] * len(text)
    spans = sentence_spans(text)
    for a, b in spans:
        assert 0 <= a < b <= len(text)
        assert not text[a].isspace() and not text[b - 1].isspace()
        for i in range(a, b):
            covered[i] = True
    for i, ch in enumerate(text):
        if not ch.isspace():
            assert covered[i]


@given(st.text(max_size=300))
def test_sentence_spans_are_disjoint_and_ordered(text):
    spans = sentence_spans(text)
    for (a1, b1), (a2, b2) in zip(spans, spans[1:]):
        assert b1 <= a2
