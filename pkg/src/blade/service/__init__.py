"""HTTP service: app factory, configuration, persistence."""

from blade.service.app import Generation, create_app, serve
from blade.service.config import BackendSettings, ServiceConfig, load_service_config
from blade.service.store import InteractionLog, SessionStore, StoredSession

__all__ = [
    "BackendSettings",
    "Generation",
    "InteractionLog",
    "ServiceConfig",
    "SessionStore",
    "StoredSession",
    "create_app",
    "load_service_config",
    "serve",
]
