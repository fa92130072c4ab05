"""Response template sets.

A template set is a TOML file with an `id` and a [templates] table. Template
strings may use the placeholders {resource_label}, {excerpt}, and {topic} --
nothing else -- which is what makes the answer-withholding guarantee
structural: the composed text can only ever contain template strings,
display labels, verbatim excerpts, and known topic tags.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Mapping

from blade.errors import DataError
from blade.text import sentence_spans

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

ALLOWED_PLACEHOLDERS = {"resource_label", "excerpt", "topic"}
REQUIRED_KEYS = (
    "intro_topic",
    "intro_generic",
    "pointer",
    "question_topic",
    "question_generic",
    "no_results",
)
_PLACEHOLDER_RE = re.compile(r"\{([a-z_]+)\}")


@dataclass(frozen=True)
class TemplateSet:
    template_set_id: str
    templates: Mapping[str, str]

    def __post_init__(self):
        for key in REQUIRED_KEYS:
            if key not in self.templates:
                raise DataError(f"template set {self.template_set_id!r} missing {key!r}")
        for key, value in self.templates.items():
            for name in _PLACEHOLDER_RE.findall(value):
                if name not in ALLOWED_PLACEHOLDERS:
                    raise DataError(
                        f"template {key!r} uses unknown placeholder {{{name}}}"
                    )

    def get(self, key: str) -> str:
        return self.templates[key]

    def render(self, key: str, **fills: str) -> str:
        return self.templates[key].format(**{name: fills.get(name, "") for name in ALLOWED_PLACEHOLDERS})

    def skeletons(self) -> frozenset[str]:
        """Template strings with placeholders removed (withholding check)."""
        return frozenset(
            _PLACEHOLDER_RE.sub("", value) for value in self.templates.values()
        )

    def sentence_patterns(self) -> list[re.Pattern]:
        """One regex per template sentence, placeholders matching lazily.

        Used by the grounding validator to recognize template-family
        sentences inside a draft.
        """
        patterns = []
        for value in self.templates.values():
            for a, b in sentence_spans(value):
                sentence = value[a:b]
                escaped = re.escape(sentence)
                for name in ALLOWED_PLACEHOLDERS:
                    escaped = escaped.replace(re.escape("{" + name + "}"), r"(.*?)")
                patterns.append(re.compile(rf"^{escaped}$", re.DOTALL))
        return patterns


def load_template_set(path: str | Path) -> TemplateSet:
    path = Path(path)
    if not path.is_file():
        raise DataError(f"template set file not found: {path}")
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    templates = raw.get("templates")
    if not isinstance(templates, dict) or not templates:
        raise DataError(f"{path}: missing [templates] table")
    return TemplateSet(
        template_set_id=str(raw.get("id", path.stem)),
        templates={k: str(v) for k, v in templates.items()},
    )


def default_template_set() -> TemplateSet:
    ref = importlib_resources.files("blade").joinpath("data/templates/default.toml")
    with importlib_resources.as_file(ref) as path:
        return load_template_set(path)
