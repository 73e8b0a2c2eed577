"""Background render jobs.

Jobs run on a small worker pool; a per-project render lock serializes
concurrent renders on the same project (the second request queues behind the
first). State transitions are queued -> running -> done | failed.
"""

from __future__ import annotations

import os
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..audio import build_plan, load_wav, render, save_wav
from .store import ProjectStore


@dataclass
class RenderJob:
    id: str
    project_id: str
    state: str = "queued"  # queued | running | done | failed
    output_path: str | None = None
    warnings: list[str] = field(default_factory=list)
    error: str | None = None

    def to_document(self) -> dict:
        return {
            "id": self.id,
            "project_id": self.project_id,
            "state": self.state,
            "output": os.path.basename(self.output_path) if self.output_path else None,
            "warnings": self.warnings,
            "error": self.error,
        }


class RenderJobManager:
    def __init__(self, store: ProjectStore, provider=None, workers: int = 2):
        self.store = store
        self.provider = provider
        self._jobs: dict[str, RenderJob] = {}
        self._lock = threading.Lock()
        self._pool = ThreadPoolExecutor(max_workers=workers)

    def get(self, job_id: str) -> RenderJob | None:
        with self._lock:
            return self._jobs.get(job_id)

    def start(
        self, project_id: str, global_tau: float, overrides: dict[int, float]
    ) -> RenderJob:
        taus = {global_tau} | set(overrides.values())
        self.store.require_ready(project_id, taus)  # 409 while precomputing
        job = RenderJob(id=uuid.uuid4().hex[:12], project_id=project_id)
        with self._lock:
            self._jobs[job.id] = job
        self._pool.submit(self._run, job, global_tau, overrides)
        return job

    def _run(self, job: RenderJob, global_tau: float, overrides: dict[int, float]) -> None:
        # Per-project serialization: a second render waits here as "queued".
        with self.store.handles(job.project_id).render_lock:
            job.state = "running"
            try:
                script = self.store.effective_script(job.project_id, global_tau, overrides)
                transcript = self.store.transcript(job.project_id)
                plan = build_plan(script, transcript)
                source = load_wav(self.store.audio_path(job.project_id))
                result = render(plan, source, provider=self.provider)
                out_path = os.path.join(
                    self.store._dir(job.project_id), "renders", f"{job.id}.wav"
                )
                save_wav(result.clip, out_path)
                latest = os.path.join(
                    self.store._dir(job.project_id), "renders", "latest.wav"
                )
                save_wav(result.clip, latest)
                job.output_path = out_path
                job.warnings = result.warnings
                job.state = "done"
            except Exception as exc:
                job.error = str(exc)
                job.state = "failed"

    def shutdown(self) -> None:
        self._pool.shutdown(wait=True)
