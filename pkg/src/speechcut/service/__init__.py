"""HTTP service: project persistence, views, manual edits, render jobs."""

from .app import create_app
from .jobs import RenderJob, RenderJobManager
from .store import BadRequest, NotReady, ProjectNotFound, ProjectStore

__all__ = [
    "BadRequest",
    "NotReady",
    "ProjectNotFound",
    "ProjectStore",
    "RenderJob",
    "RenderJobManager",
    "create_app",
]
