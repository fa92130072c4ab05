"""Corpus construction: manifest -> instructional units.

Resources are processed in manifest order; unit ids are "{resource_id}#{seq}"
and therefore globally unique given unique resource ids. Any parser or
segmenter failure is re-raised tagged with the resource it came from.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Iterable

from blade.corpus.manifest import parse_manifest
from blade.corpus.segmenter import segment_slides, segment_text, segment_transcript
from blade.corpus.transcript import parse_transcript
from blade.corpus.types import CorpusManifest, InstructionalUnit, Resource, unit_from_dict, unit_to_dict
from blade.errors import BladeError, MissingFile, ResourceIngestError


def ingest_resource(resource: Resource, cfg) -> list[InstructionalUnit]:
    try:
        if resource.kind == "transcript":
            cues = parse_transcript(resource.path)
            return segment_transcript(resource, cues, cfg)
        if not resource.path.is_file():
            raise MissingFile(resource.path)
        text = resource.path.read_text(encoding="utf-8")
        if resource.kind == "slides":
            return segment_slides(resource, text, cfg)
        return segment_text(resource, text, cfg)
    except ResourceIngestError:
        raise
    except BladeError as exc:
        raise ResourceIngestError(resource.id, exc) from exc


def build_corpus(manifest: CorpusManifest) -> list[InstructionalUnit]:
    units: list[InstructionalUnit] = []
    for resource in manifest.resources:
        units.extend(ingest_resource(resource, manifest.segmentation))
    return units


def build_corpus_from_path(manifest_path: str | Path) -> tuple[CorpusManifest, list[InstructionalUnit]]:
    manifest = parse_manifest(manifest_path)
    return manifest, build_corpus(manifest)


def dump_units(units: Iterable[InstructionalUnit], fh: IO[str]) -> None:
    """Line-delimited JSON records, byte-stable for identical inputs."""
    for unit in units:
        fh.write(json.dumps(unit_to_dict(unit), ensure_ascii=False, sort_keys=True))
        fh.write("\n")


def load_units(fh: IO[str]) -> list[InstructionalUnit]:
    return [unit_from_dict(json.loads(line)) for line in fh if line.strip()]
