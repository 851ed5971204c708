"""HTTP face of the untrusted join server."""

from .app import create_app
from .state import JoinServerState

__all__ = ["JoinServerState", "create_app"]
