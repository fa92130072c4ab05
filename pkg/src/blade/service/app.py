"""HTTP service: sessions, messages, resource browsing, reindex, health.

Index swaps are read-copy-update: every request captures the current
generation once and finishes on it; POST /admin/reindex builds a fresh
generation and swaps the reference atomically, so readers never observe a
mixed index. Sessions are serialized per session id; distinct sessions
proceed concurrently (the engine itself is pure over immutable state).

Resource-configuration gating: sessions carry the study config (A/B/C).
Config C sessions cannot post messages; config A sessions get 403 from the
resource browser (pass ?session=<id> to GET /resources). GET /units/{id}
stays open because the citation excerpt panel is part of the assistant
surface itself.
"""

from __future__ import annotations

import asyncio
from dataclasses import dataclass

from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel, Field

from blade import kernels
from blade.corpus.build import build_corpus_from_path
from blade.corpus.types import locator_to_dict
from blade.dialogue.backends import RemoteBackend, RemoteBackendConfig, TemplateBackend
from blade.dialogue.composer import format_locator
from blade.dialogue.engine import answer_query
from blade.dialogue.sessions import ResponsePolicy, turn_to_dict
from blade.dialogue.templates import default_template_set, load_template_set
from blade.errors import BladeError, CorpusLoadError, EmptyQuery
from blade.index.build import CorpusIndex, build_index, load_index, save_index
from blade.index.embedder import HashingEmbedder
from blade.index.retrieval import RankerWeights, RankingConfig, default_weights
from blade.service.config import ServiceConfig
from blade.service.store import SESSION_CONFIGS, InteractionLog, SessionStore


@dataclass(frozen=True)
class Generation:
    number: int
    index: CorpusIndex
    course_id: str


class CreateSessionBody(BaseModel):
    course_id: str
    module_tag: str | None = None
    config: str = Field(default="B", pattern="^[ABC]$")


class MessageBody(BaseModel):
    text: str


class EventBody(BaseModel):
    event: str
    unit_id: str | None = None


class ReindexBody(BaseModel):
    manifest: str | None = None


def _load_generation(config: ServiceConfig, embedder) -> Generation:
    try:
        if config.index_path and config.index_path.is_file():
            index = load_index(config.index_path, expected_embedder_id=embedder.embedder_id)
            course_id = "unknown"
            if config.manifest.is_file():
                from blade.corpus.manifest import parse_manifest

                course_id = parse_manifest(config.manifest, check_paths=False).course_id
            return Generation(number=1, index=index, course_id=course_id)
        manifest, units = build_corpus_from_path(config.manifest)
        index = build_index(units, embedder, resources=manifest.resources)
        if config.index_path:
            config.index_path.parent.mkdir(parents=True, exist_ok=True)
            save_index(index, config.index_path)
        return Generation(number=1, index=index, course_id=manifest.course_id)
    except BladeError as exc:
        raise CorpusLoadError(f"cannot load corpus: {exc}") from exc


def create_app(config: ServiceConfig) -> FastAPI:
    embedder = HashingEmbedder()
    generation = _load_generation(config, embedder)

    templates = (
        load_template_set(config.template_file) if config.template_file else default_template_set()
    )
    policy = ResponsePolicy(max_citations=config.max_citations,
                            template_set_id=templates.template_set_id)
    ranking = RankingConfig(max_per_resource=config.max_per_resource)
    if config.weights_file:
        import json

        weights = RankerWeights.from_dict(json.loads(config.weights_file.read_text()))
    else:
        weights = default_weights()
    if config.backend.kind == "remote":
        backend = RemoteBackend(
            RemoteBackendConfig(
                endpoint=config.backend.endpoint,
                model=config.backend.model,
                token=config.backend.token,
            )
        )
    else:
        backend = TemplateBackend(templates)

    config.log_dir.mkdir(parents=True, exist_ok=True)
    store = SessionStore(config.log_dir)
    log = InteractionLog(config.log_dir / "interactions.jsonl")

    app = FastAPI(title="blade", version="0.1.0")
    app.state.generation = generation
    app.state.store = store
    app.state.log = log
    swap_lock = asyncio.Lock()
    session_locks: dict[str, asyncio.Lock] = {}
    locks_guard = asyncio.Lock()

    async def session_lock(session_id: str) -> asyncio.Lock:
        async with locks_guard:
            if session_id not in session_locks:
                session_locks[session_id] = asyncio.Lock()
            return session_locks[session_id]

    def current() -> Generation:
        return app.state.generation

    @app.get("/health")
    async def health():
        gen = current()
        return {
            "status": "ok",
            "units": len(gen.index),
            "generation": gen.number,
            "course_id": gen.course_id,
            "kernel": kernels.implementation(),
        }

    @app.post("/sessions", status_code=201)
    async def create_session(body: CreateSessionBody):
        if body.config not in SESSION_CONFIGS:
            raise HTTPException(400, "config must be A, B, or C")
        stored = store.create(body.course_id, body.module_tag, body.config)
        return {"session_id": stored.session.id, "config": stored.config}

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        stored = _stored_or_404(session_id)
        session = stored.session
        return {
            "session_id": session.id,
            "course_id": session.course_id,
            "module_tag": session.current_module,
            "config": stored.config,
            "created_at": session.created_at,
            "turns": [turn_to_dict(t) for t in session.turns],
        }

    def _stored_or_404(session_id: str):
        try:
            return store.get(session_id)
        except BladeError:
            raise HTTPException(404, f"unknown session {session_id!r}")

    @app.post("/sessions/{session_id}/messages")
    async def post_message(session_id: str, body: MessageBody):
        stored = _stored_or_404(session_id)
        if stored.config == "C":
            raise HTTPException(403, "chat is disabled for this session's resource configuration")
        if not body.text.strip():
            raise HTTPException(400, "message text is empty")
        lock = await session_lock(session_id)
        async with lock:
            gen = current()  # one generation per request, captured under the lock
            log.append(session_id, "query", {"text": body.text})
            try:
                turn = await asyncio.to_thread(
                    answer_query,
                    stored.session,
                    body.text,
                    gen.index,
                    weights,
                    policy,
                    templates,
                    backend,
                    ranking,
                    embedder,
                )
            except EmptyQuery:
                raise HTTPException(400, "message text is empty")
            store.persist_turn(session_id, stored.session.turns[-2])
            store.persist_turn(session_id, turn)
            log.append(
                session_id,
                "response",
                {
                    "no_results": turn.no_results,
                    "citations": [c.unit_id for c in turn.citations],
                    "generation": gen.number,
                },
            )
        return {
            "text": turn.text,
            "citations": [
                {"unit_id": c.unit_id, "display_label": c.display_label, "excerpt": c.excerpt}
                for c in turn.citations
            ],
            "no_results": turn.no_results,
            "generation": gen.number,
        }

    @app.post("/sessions/{session_id}/events", status_code=204)
    async def post_event(session_id: str, body: EventBody):
        _stored_or_404(session_id)
        if body.event not in ("citation_click", "error"):
            raise HTTPException(400, f"unsupported event {body.event!r}")
        log.append(session_id, body.event, {"unit_id": body.unit_id})
        return Response(status_code=204)

    def _check_browse_allowed(session: str | None):
        if session is None:
            return
        stored = _stored_or_404(session)
        if stored.config == "A":
            raise HTTPException(
                403, "resource browsing is disabled for this session's resource configuration"
            )

    @app.get("/resources")
    async def list_resources(session: str | None = None):
        _check_browse_allowed(session)
        gen = current()
        counts: dict[str, int] = {}
        for unit in gen.index.units:
            counts[unit.resource_id] = counts.get(unit.resource_id, 0) + 1
        return {
            "resources": [
                {
                    "id": r.id,
                    "title": r.title,
                    "kind": r.kind,
                    "module_tag": r.module_tag,
                    "topics": sorted(r.topics),
                    "objectives": sorted(r.objectives),
                    "units": counts.get(r.id, 0),
                }
                for r in gen.index.resources
            ]
        }

    @app.get("/resources/{resource_id}")
    async def get_resource(resource_id: str, session: str | None = None):
        _check_browse_allowed(session)
        gen = current()
        for r in gen.index.resources:
            if r.id == resource_id:
                unit_ids = [u.id for u in gen.index.units if u.resource_id == resource_id]
                return {
                    "id": r.id,
                    "title": r.title,
                    "kind": r.kind,
                    "module_tag": r.module_tag,
                    "topics": sorted(r.topics),
                    "objectives": sorted(r.objectives),
                    "unit_ids": unit_ids,
                }
        raise HTTPException(404, f"unknown resource {resource_id!r}")

    @app.get("/units/{unit_id}")
    async def get_unit(unit_id: str):
        gen = current()
        ordinal = gen.index.unit_ordinal.get(unit_id)
        if ordinal is None:
            raise HTTPException(404, f"unknown unit {unit_id!r}")
        unit = gen.index.units[ordinal]
        resource = gen.index.resource_of(unit)
        return {
            "id": unit.id,
            "resource_id": unit.resource_id,
            "resource_title": resource.title if resource else unit.resource_id,
            "resource_kind": resource.kind if resource else "",
            "seq": unit.seq,
            "text": unit.text,
            "locator": locator_to_dict(unit.locator),
            "locator_label": format_locator(unit.locator),
            "topics": sorted(unit.topics),
            "objectives": sorted(unit.objectives),
        }

    @app.post("/admin/reindex")
    async def reindex(body: ReindexBody | None = None):
        manifest_path = config.manifest
        if body and body.manifest:
            manifest_path = config.manifest.parent / body.manifest
        async with swap_lock:
            try:
                manifest, units = await asyncio.to_thread(build_corpus_from_path, manifest_path)
                index = await asyncio.to_thread(
                    build_index, units, embedder, manifest.resources
                )
            except BladeError as exc:
                raise HTTPException(422, f"reindex failed: {exc}")
            old = current()
            app.state.generation = Generation(
                number=old.number + 1, index=index, course_id=manifest.course_id
            )
        gen = current()
        return {"units": len(gen.index), "generation": gen.number}

    return app


def serve(config: ServiceConfig) -> None:
    """Build the app (raising CorpusLoadError on bad corpora) and serve it."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
