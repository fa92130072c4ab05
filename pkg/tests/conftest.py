"""Shared fixtures: the bundled sample course and small synthetic corpora."""

from __future__ import annotations

import random
from dataclasses import dataclass

import pytest

from blade.corpus import (
    CorpusManifest,
    InstructionalUnit,
    Resource,
    SectionPath,
    SegmentationConfig,
    build_corpus,
    parse_manifest,
)
from blade.fixtures import sample_manifest_path
from blade.index import CorpusIndex, HashingEmbedder, build_index

WORDS = (
    "jaccard similarity cosine vector set union intersection token corpus "
    "document retrieval index ranking score overlap measure distance metric "
    "embedding lexical semantic query passage evidence course lecture slide "
    "chapter exercise student learning objective module topic textbook"
).split()


def make_resource(rid="res1", kind="textbook", module="module-1", topics=(),
                  objectives=(), title=None) -> Resource:
    return Resource(
        id=rid,
        title=title or rid,
        kind=kind,
        module_tag=module,
        path=f"{rid}.md",
        topics=frozenset(topics),
        objectives=frozenset(objectives),
    )


def make_unit(uid, rid="res1", seq=0, text="some text", topics=(), objectives=(),
              locator=None) -> InstructionalUnit:
    return InstructionalUnit(
        id=uid,
        resource_id=rid,
        seq=seq,
        text=text,
        locator=locator or SectionPath(()),
        topics=frozenset(topics),
        objectives=frozenset(objectives),
    )


def random_sentence(rng: random.Random, lo=6, hi=14) -> str:
    words = [rng.choice(WORDS) for _ in range(rng.randint(lo, hi))]
    return " ".join(words).capitalize() + rng.choice((".", ".", ".", "?", "!"))


def random_document(rng: random.Random, n_paragraphs=6, headings=True) -> str:
    parts = []
    for p in range(n_paragraphs):
        if headings and rng.random() < 0.4:
            level = rng.choice(("#", "##"))
            parts.append(f"{level} {rng.choice(WORDS).capitalize()} {rng.choice(WORDS)}")
        sentences = [random_sentence(rng) for _ in range(rng.randint(2, 6))]
        parts.append(" ".join(sentences))
    return "\n\n".join(parts)


@dataclass(frozen=True)
class SampleCourse:
    manifest: CorpusManifest
    units: tuple
    index: CorpusIndex
    embedder: HashingEmbedder


@pytest.fixture(scope="session")
def sample_course() -> SampleCourse:
    manifest = parse_manifest(sample_manifest_path())
    units = build_corpus(manifest)
    embedder = HashingEmbedder()
    index = build_index(units, embedder, resources=manifest.resources)
    return SampleCourse(manifest=manifest, units=tuple(units), index=index, embedder=embedder)


def build_random_corpus(rng: random.Random, n_resources=3, target=30, overlap=6):
    """A small synthetic corpus with varied kinds and metadata."""
    kinds = ("textbook", "notebook", "reading")
    resources = []
    all_units = []
    cfg = SegmentationConfig(target_tokens=target, overlap_tokens=overlap)
    from blade.corpus import segment_text

    for r in range(n_resources):
        topics = frozenset(rng.sample(WORDS, rng.randint(1, 3)))
        res = make_resource(
            rid=f"res{r}",
            kind=kinds[r % len(kinds)],
            module=f"module-{r % 2 + 1}",
            topics=topics,
            objectives=frozenset({f"objective {w}" for w in rng.sample(WORDS, 2)}),
        )
        resources.append(res)
        all_units.extend(segment_text(res, random_document(rng), cfg))
    return resources, all_units
