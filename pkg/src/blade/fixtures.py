"""Access to the bundled sample course (offline demo and test fixture)."""

from __future__ import annotations

from importlib import resources as importlib_resources
from pathlib import Path


def sample_course_dir() -> Path:
    path = Path(str(importlib_resources.files("blade").joinpath("data/sample_course")))
    if not path.is_dir():
        raise RuntimeError("sample course data not found; is the package installed normally?")
    return path


def sample_manifest_path() -> Path:
    return sample_course_dir() / "manifest.toml"
