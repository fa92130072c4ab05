"""Session persistence and the append-only interaction log.

Everything is line-delimited JSON under the log directory: one file per
session (a meta line followed by one line per turn) and a single
interactions.jsonl. Writers append and flush per line; on recovery a
truncated final line (no newline, or unparseable JSON) is discarded and all
prior lines load. No database dependency.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass
from pathlib import Path

from blade.dialogue.sessions import DialogueTurn, Session, turn_from_dict, turn_to_dict, utc_now_iso
from blade.errors import UnknownSession

SESSION_CONFIGS = ("A", "B", "C")


@dataclass
class StoredSession:
    session: Session
    config: str  # resource configuration the session runs under


def _read_jsonl(path: Path) -> list[dict]:
    """Parse a JSONL file, dropping a truncated final line."""
    if not path.is_file():
        return []
    raw = path.read_bytes()
    records: list[dict] = []
    lines = raw.split(b"\n")
    complete = lines[:-1]  # final element is b"" for a clean file
    tail = lines[-1]
    for line in complete:
        if not line.strip():
            continue
        records.append(json.loads(line))
    if tail.strip():
        try:
            records.append(json.loads(tail))
        except json.JSONDecodeError:
            pass  # crash-truncated tail, discard
    return records


class SessionStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.sessions_dir = self.root / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._sessions: dict[str, StoredSession] = {}
        self._load_existing()

    def _path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.jsonl"

    def _load_existing(self) -> None:
        for path in sorted(self.sessions_dir.glob("*.jsonl")):
            records = _read_jsonl(path)
            if not records or records[0].get("type") != "meta":
                continue
            meta = records[0]
            session = Session(
                id=meta["session_id"],
                course_id=meta["course_id"],
                current_module=meta.get("module_tag"),
                created_at=meta["created_at"],
            )
            for record in records[1:]:
                if record.get("type") == "turn":
                    session.append_turn(turn_from_dict(record["turn"]))
            self._sessions[session.id] = StoredSession(session=session, config=meta["config"])

    def create(self, course_id: str, module_tag: str | None, config: str) -> StoredSession:
        if config not in SESSION_CONFIGS:
            raise ValueError(f"bad session config {config!r}")
        session = Session(
            id=uuid.uuid4().hex,
            course_id=course_id,
            current_module=module_tag,
            created_at=utc_now_iso(),
        )
        stored = StoredSession(session=session, config=config)
        meta = {
            "type": "meta",
            "session_id": session.id,
            "course_id": course_id,
            "module_tag": module_tag,
            "config": config,
            "created_at": session.created_at,
        }
        with self._lock:
            self._sessions[session.id] = stored
            with open(self._path(session.id), "w", encoding="utf-8") as fh:
                fh.write(json.dumps(meta, ensure_ascii=False) + "\n")
        return stored

    def get(self, session_id: str) -> StoredSession:
        stored = self._sessions.get(session_id)
        if stored is None:
            raise UnknownSession(session_id)
        return stored

    def ids(self) -> list[str]:
        return sorted(self._sessions)

    def persist_turn(self, session_id: str, turn: DialogueTurn) -> None:
        record = {"type": "turn", "turn": turn_to_dict(turn)}
        with self._lock:
            if session_id not in self._sessions:
                raise UnknownSession(session_id)
            with open(self._path(session_id), "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
                fh.flush()


class InteractionLog:
    """Append-only event log; timestamps are monotone per session."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._last_ts: dict[str, float] = {}

    def append(self, session_id: str, event: str, payload: dict | None = None) -> None:
        with self._lock:
            ts = time.time()
            last = self._last_ts.get(session_id)
            if last is not None and ts <= last:
                ts = last + 1e-6
            self._last_ts[session_id] = ts
            record = {
                "ts": ts,
                "session_id": session_id,
                "event": event,
                "payload": payload or {},
            }
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
                fh.flush()

    def read_all(self) -> list[dict]:
        return _read_jsonl(self.path)
