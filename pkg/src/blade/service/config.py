"""Service configuration (TOML file plus environment overrides).

    listen = "127.0.0.1:8100"
    manifest = "sample_course/manifest.toml"
    index_path = "var/index.blade"     # optional: load/persist the index here
    log_dir = "var/logs"

    [backend]
    kind = "template"                  # template | remote
    endpoint = ""                      # remote only
    model = ""
    token = ""

    [policy]
    max_citations = 4
    template_file = ""                 # optional custom template set

    [ranking]
    max_per_resource = 2
    weights_file = ""                  # optional trained RankerWeights JSON

Environment: BLADE_LISTEN overrides listen, BLADE_BACKEND_TOKEN overrides
the remote backend token.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from blade.errors import DataError, MissingFile

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class BackendSettings:
    kind: str = "template"
    endpoint: str = ""
    model: str = ""
    token: str = ""

    def __post_init__(self):
        if self.kind not in ("template", "remote"):
            raise DataError(f"backend.kind must be template or remote, got {self.kind!r}")
        if self.kind == "remote" and not self.endpoint:
            raise DataError("backend.kind = remote requires backend.endpoint")


@dataclass(frozen=True)
class ServiceConfig:
    manifest: Path
    log_dir: Path
    host: str = "127.0.0.1"
    port: int = 8100
    index_path: Path | None = None
    backend: BackendSettings = field(default_factory=BackendSettings)
    max_citations: int = 4
    template_file: Path | None = None
    max_per_resource: int = 2
    weights_file: Path | None = None


def _parse_listen(listen: str) -> tuple[str, int]:
    host, _, port = listen.rpartition(":")
    if not host or not port.isdigit():
        raise DataError(f"listen must look like host:port, got {listen!r}")
    return host, int(port)


def load_service_config(path: str | Path) -> ServiceConfig:
    path = Path(path)
    if not path.is_file():
        raise MissingFile(path)
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    base = path.parent

    listen = os.environ.get("BLADE_LISTEN") or raw.get("listen", "127.0.0.1:8100")
    host, port = _parse_listen(listen)

    manifest = raw.get("manifest")
    if not manifest:
        raise DataError("service config requires a manifest path")

    backend_raw = raw.get("backend", {})
    backend = BackendSettings(
        kind=backend_raw.get("kind", "template"),
        endpoint=backend_raw.get("endpoint", ""),
        model=backend_raw.get("model", ""),
        token=os.environ.get("BLADE_BACKEND_TOKEN") or backend_raw.get("token", ""),
    )
    policy_raw = raw.get("policy", {})
    ranking_raw = raw.get("ranking", {})

    def opt_path(value: str | None) -> Path | None:
        return (base / value) if value else None

    return ServiceConfig(
        manifest=base / manifest,
        log_dir=base / raw.get("log_dir", "blade_logs"),
        host=host,
        port=port,
        index_path=opt_path(raw.get("index_path")),
        backend=backend,
        max_citations=int(policy_raw.get("max_citations", 4)),
        template_file=opt_path(policy_raw.get("template_file")),
        max_per_resource=int(ranking_raw.get("max_per_resource", 2)),
        weights_file=opt_path(ranking_raw.get("weights_file")),
    )
