"""Course manifest parsing.

A manifest is one TOML file naming the course, its resources, and the
segmentation settings. Resource paths are resolved relative to the manifest's
directory. Schema (see README for the full version):

    course_id = "nlp-2025"

    [segmentation]            # optional, defaults shown
    target_tokens = 200
    overlap_tokens = 40
    transcript_window_s = 90.0

    [[resources]]
    id = "textbook-ch3"
    title = "Textbook ch. 3"
    kind = "textbook"         # textbook | slides | transcript | reading | notebook
    module_tag = "module-2"
    path = "textbook_ch3.md"
    topics = ["jaccard similarity"]
    objectives = ["compute jaccard similarity between two sets"]
"""

from __future__ import annotations

import sys
from pathlib import Path

from blade.corpus.types import (
    RESOURCE_KINDS,
    CorpusManifest,
    Resource,
    SegmentationConfig,
)
from blade.errors import DuplicateResourceId, MalformedManifest, MissingFile

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

_REQUIRED_RESOURCE_FIELDS = ("id", "title", "kind", "module_tag", "path")


def parse_manifest(path: str | Path, *, check_paths: bool = True) -> CorpusManifest:
    """Read and validate a course manifest.

    check_paths=False skips the existence check on resource files (used by
    tools that only inspect metadata).
    """
    path = Path(path)
    if not path.is_file():
        raise MissingFile(path)
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise MalformedManifest("<file>", f"not valid TOML: {exc}") from exc

    course_id = raw.get("course_id")
    if not isinstance(course_id, str) or not course_id:
        raise MalformedManifest("course_id", "required non-empty string")

    seg = _parse_segmentation(raw.get("segmentation", {}))

    entries = raw.get("resources")
    if not isinstance(entries, list) or not entries:
        raise MalformedManifest("resources", "at least one [[resources]] entry required")

    resources = []
    seen: set[str] = set()
    for i, entry in enumerate(entries):
        res = _parse_resource(entry, index=i, base_dir=path.parent)
        if res.id in seen:
            raise DuplicateResourceId(res.id)
        seen.add(res.id)
        if check_paths and not res.path.is_file():
            raise MissingFile(res.path)
        resources.append(res)

    return CorpusManifest(course_id=course_id, resources=tuple(resources), segmentation=seg)


def _parse_segmentation(raw: dict) -> SegmentationConfig:
    if not isinstance(raw, dict):
        raise MalformedManifest("segmentation", "must be a table")
    defaults = SegmentationConfig()
    target = raw.get("target_tokens", defaults.target_tokens)
    overlap = raw.get("overlap_tokens", defaults.overlap_tokens)
    window = raw.get("transcript_window_s", defaults.transcript_window_s)
    if not isinstance(target, int) or target < 1:
        raise MalformedManifest("target_tokens", "must be a positive integer")
    if not isinstance(overlap, int) or overlap < 0:
        raise MalformedManifest("overlap_tokens", "must be a non-negative integer")
    if overlap >= target:
        raise MalformedManifest(
            "overlap_tokens", f"must be smaller than target_tokens ({overlap} >= {target})"
        )
    if not isinstance(window, (int, float)) or window <= 0:
        raise MalformedManifest("transcript_window_s", "must be a positive number")
    return SegmentationConfig(
        target_tokens=target, overlap_tokens=overlap, transcript_window_s=float(window)
    )


def _parse_resource(entry: object, index: int, base_dir: Path) -> Resource:
    where = f"resources[{index}]"
    if not isinstance(entry, dict):
        raise MalformedManifest(where, "must be a table")
    for field in _REQUIRED_RESOURCE_FIELDS:
        value = entry.get(field)
        if not isinstance(value, str) or not value:
            raise MalformedManifest(f"{where}.{field}", "required non-empty string")
    if entry["kind"] not in RESOURCE_KINDS:
        raise MalformedManifest(
            f"{where}.kind", f"{entry['kind']!r} not one of {', '.join(RESOURCE_KINDS)}"
        )
    topics = entry.get("topics", [])
    objectives = entry.get("objectives", [])
    for field, value in (("topics", topics), ("objectives", objectives)):
        if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
            raise MalformedManifest(f"{where}.{field}", "must be an array of strings")
    return Resource(
        id=entry["id"],
        title=entry["title"],
        kind=entry["kind"],
        module_tag=entry["module_tag"],
        path=base_dir / entry["path"],
        topics=frozenset(topics),
        objectives=frozenset(objectives),
    )
