"""Course-material ingestion: manifests, parsing, segmentation, metadata."""

from blade.corpus.build import build_corpus, build_corpus_from_path, dump_units, ingest_resource, load_units
from blade.corpus.manifest import parse_manifest
from blade.corpus.segmenter import (
    normalize_source,
    segment_slides,
    segment_text,
    segment_transcript,
    split_slides,
    transcript_source,
)
from blade.corpus.transcript import format_timestamp, parse_transcript, parse_transcript_text
from blade.corpus.types import (
    RESOURCE_KINDS,
    CorpusManifest,
    InstructionalUnit,
    PageRange,
    Resource,
    SectionPath,
    SegmentationConfig,
    SlideNumber,
    SourceLocator,
    TimeSpan,
    locator_from_dict,
    locator_to_dict,
    unit_from_dict,
    unit_to_dict,
)

__all__ = [
    "RESOURCE_KINDS",
    "CorpusManifest",
    "InstructionalUnit",
    "PageRange",
    "Resource",
    "SectionPath",
    "SegmentationConfig",
    "SlideNumber",
    "SourceLocator",
    "TimeSpan",
    "build_corpus",
    "build_corpus_from_path",
    "dump_units",
    "format_timestamp",
    "ingest_resource",
    "load_units",
    "locator_from_dict",
    "locator_to_dict",
    "normalize_source",
    "parse_manifest",
    "parse_transcript",
    "parse_transcript_text",
    "segment_slides",
    "segment_text",
    "segment_transcript",
    "split_slides",
    "transcript_source",
    "unit_from_dict",
    "unit_to_dict",
]
