import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blade.errors import EmptyCorpus, IndexFormatError
from blade.index import HashingEmbedder, build_index, load_index, save_index
from blade.text import tokenize
from conftest import make_resource, make_unit


@pytest.fixture()
def tiny_index():
    units = [
        make_unit("a#0", "a", 0, "jaccard similarity measures set overlap"),
        make_unit("a#1", "a", 1, "cosine similarity measures vector angles closely"),
        make_unit("b#0", "b", 0, "jaccard index and jaccard similarity are the same measure"),
    ]
    return build_index(units, HashingEmbedder(64))


def test_postings_contain_every_token(tiny_index):
    for ordinal, unit in enumerate(tiny_index.units):
        for token in tokenize(unit.text):
            plist = dict(tiny_index.postings[token])
            assert ordinal in plist
            assert plist[ordinal] == tokenize(unit.text).count(token)


def test_avg_doc_len_is_mean():
    units = [
        make_unit("u0", text=" ".join(["w"] * 10)),
        make_unit("u1", seq=1, text=" ".join(["w"] * 20)),
        make_unit("u2", seq=2, text=" ".join(["w"] * 30)),
    ]
    index = build_index(units, HashingEmbedder(16))
    assert index.avg_doc_len == 20.0
    assert index.doc_lengths == (10, 20, 30)


def test_rebuild_is_identical(tiny_index):
    again = build_index(list(tiny_index.units), HashingEmbedder(64))
    assert dict(again.postings) == dict(tiny_index.postings)
    assert np.array_equal(again.vectors, tiny_index.vectors)
    assert again.doc_lengths == tiny_index.doc_lengths


def test_empty_corpus_rejected():
    with pytest.raises(EmptyCorpus):
        build_index([], HashingEmbedder(16))


def test_index_vectors_are_read_only(tiny_index):
    with pytest.raises(ValueError):
        tiny_index.vectors[0, 0] = 5.0


def test_save_load_round_trip(tmp_path, tiny_index):
    path = tmp_path / "idx.blade"
    save_index(tiny_index, path)
    loaded = load_index(path, expected_embedder_id="hashing-unigram-v1-d64")
    assert loaded.units == tiny_index.units
    assert dict(loaded.postings) == dict(tiny_index.postings)
    assert np.array_equal(loaded.vectors, tiny_index.vectors)
    assert loaded.avg_doc_len == tiny_index.avg_doc_len
    assert loaded.embedder_id == tiny_index.embedder_id


def test_load_with_wrong_embedder_id_fails(tmp_path, tiny_index):
    path = tmp_path / "idx.blade"
    save_index(tiny_index, path)
    with pytest.raises(IndexFormatError):
        load_index(path, expected_embedder_id="hashing-unigram-v1-d256")


def test_load_garbage_fails(tmp_path):
    path = tmp_path / "idx.blade"
    path.write_bytes(b"not a zip at all")
    with pytest.raises(IndexFormatError):
        load_index(path)


def test_resources_survive_round_trip(tmp_path):
    res = make_resource(rid="a", topics={"sets"}, objectives={"define a set"})
    units = [make_unit("a#0", "a", 0, "some set text", topics={"sets"})]
    index = build_index(units, HashingEmbedder(16), resources=(res,))
    path = tmp_path / "idx.blade"
    save_index(index, path)
    loaded = load_index(path)
    assert loaded.resources[0].id == "a"
    assert loaded.resources[0].topics == frozenset({"sets"})


# --- embedder ---------------------------------------------------------------


def test_embedder_unit_norm_and_determinism():
    emb = HashingEmbedder(256)
    v1 = emb.embed("jaccard similarity of two sets")
    v2 = emb.embed("jaccard similarity of two sets")
    assert np.array_equal(v1, v2)
    assert abs(np.linalg.norm(v1) - 1.0) <= 1e-9
    assert v1.shape == (256,)


def test_embedder_no_tokens_gives_basis_vector():
    emb = HashingEmbedder(32)
    v = emb.embed("!!! ...")
    assert v[0] == 1.0
    assert np.linalg.norm(v) == 1.0


@settings(max_examples=50, deadline=None)
@given(st.text(min_size=1, max_size=200))
def test_embedder_norm_property(text):
    emb = HashingEmbedder(64)
    v = emb.embed(text)
    assert abs(float(np.linalg.norm(v)) - 1.0) <= 1e-9
