"""Generation backends.

TemplateBackend is the built-in deterministic composer. RemoteBackend talks
to an external chat-completion service; its drafts must survive the
grounding validator, and any transport failure raises BackendUnavailable so
the engine can fall back to templates. The engine never delivers a remote
draft unvalidated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence, runtime_checkable

import httpx

from blade.dialogue.composer import CitedPassage, compose_template_response
from blade.dialogue.sessions import ResponsePolicy
from blade.dialogue.templates import TemplateSet
from blade.errors import BackendUnavailable

DEFAULT_TIMEOUT_S = 10.0


@runtime_checkable
class GenerationBackend(Protocol):
    name: str
    is_remote: bool

    def compose(self, query: str, passages: Sequence[CitedPassage],
                policy: ResponsePolicy, query_topics: frozenset[str] = frozenset(),
                ) -> str: ...


class TemplateBackend:
    name = "template"
    is_remote = False

    def __init__(self, templates: TemplateSet):
        self.templates = templates

    def compose(self, query, passages, policy, query_topics=frozenset()):
        return compose_template_response(
            query, list(passages), policy, self.templates, query_topics
        )


_SYSTEM_PROMPT = (
    "You are a study guide for a university course. Never state the final "
    "answer to the student's question. Point the student at the cited course "
    "material, quote short verbatim passages from it, and end with one "
    "guiding question. Use only the provided passages."
)


@dataclass
class RemoteBackendConfig:
    endpoint: str
    model: str
    token: str = ""
    timeout_s: float = DEFAULT_TIMEOUT_S


class RemoteBackend:
    """Client for a minimal chat-completion HTTP contract:

    POST {endpoint} with {"model": ..., "messages": [...]}
    -> {"choices": [{"message": {"content": ...}}]}
    """

    name = "remote"
    is_remote = True

    def __init__(self, config: RemoteBackendConfig):
        self.config = config

    def compose(self, query, passages, policy, query_topics=frozenset()):
        lines = [f"Student question: {query}", "", "Cited course material:"]
        for cited in passages:
            lines.append(f"[{cited.citation.display_label}]")
            lines.append(cited.citation.excerpt)
            lines.append("")
        payload = {
            "model": self.config.model,
            "messages": [
                {"role": "system", "content": _SYSTEM_PROMPT},
                {"role": "user", "content": "\n".join(lines)},
            ],
        }
        headers = {}
        if self.config.token:
            headers["Authorization"] = f"Bearer {self.config.token}"
        try:
            response = httpx.post(
                self.config.endpoint,
                json=payload,
                headers=headers,
                timeout=self.config.timeout_s,
            )
            response.raise_for_status()
            content = response.json()["choices"][0]["message"]["content"]
        except (httpx.HTTPError, KeyError, IndexError, TypeError, ValueError) as exc:
            raise BackendUnavailable(f"remote backend failed: {exc}") from exc
        if not isinstance(content, str) or not content.strip():
            raise BackendUnavailable("remote backend returned empty content")
        return content
