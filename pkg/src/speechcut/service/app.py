"""HTTP API backing the editing UI.

All payload schemas are the owning modules' serializations; view and outline
responses are serialized with sorted keys so identical state yields
byte-identical documents across restarts.
"""

from __future__ import annotations

import hashlib
import json
import os

from fastapi import FastAPI, File, Request, UploadFile
from fastapi.responses import FileResponse, JSONResponse, Response

from ..audio import AudioFormatError
from ..gateway import Gateway
from ..outline import build_outline
from ..shortener import normalize_segment_words
from ..alignment import apply_script
from ..transcript import COMPRESSION_TARGETS
from .jobs import RenderJobManager
from .store import (
    BadRequest,
    NotReady,
    ProjectNotFound,
    ProjectStore,
    parse_overrides_param,
)
from .views import build_view, script_stats


def _stable_json(doc: dict, status_code: int = 200) -> Response:
    return Response(
        content=json.dumps(doc, sort_keys=True) + "\n",
        media_type="application/json",
        status_code=status_code,
    )


def _parse_target(raw) -> float:
    try:
        tau = int(raw) / 100.0
    except (TypeError, ValueError):
        raise BadRequest(f"target must be an integer percent, got {raw!r}")
    if tau not in COMPRESSION_TARGETS:
        raise BadRequest("target must be one of 0,15,25,50,75")
    return tau


def create_app(
    store_dir: str,
    gateway: Gateway | None = None,
    synthesis_provider=None,
    n_candidates: int = 25,
    precompute_async: bool = True,
) -> FastAPI:
    store = ProjectStore(
        store_dir,
        gateway=gateway,
        n_candidates=n_candidates,
        precompute_async=precompute_async,
    )
    jobs = RenderJobManager(store, provider=synthesis_provider)
    app = FastAPI(title="speechcut service")
    app.state.store = store
    app.state.jobs = jobs

    @app.exception_handler(ProjectNotFound)
    async def _not_found(request: Request, exc: ProjectNotFound):
        return JSONResponse({"error": "project not found"}, status_code=404)

    @app.exception_handler(NotReady)
    async def _not_ready(request: Request, exc: NotReady):
        return JSONResponse(
            {"error": "precompute in progress", "progress": exc.progress},
            status_code=409,
        )

    @app.exception_handler(BadRequest)
    async def _bad_request(request: Request, exc: BadRequest):
        return JSONResponse({"error": str(exc)}, status_code=400)

    @app.exception_handler(AudioFormatError)
    async def _bad_audio(request: Request, exc: AudioFormatError):
        return JSONResponse({"error": str(exc), "field": "audio"}, status_code=400)

    # -- lifecycle ----------------------------------------------------------

    @app.post("/projects", status_code=201)
    def create_project(
        transcript: UploadFile = File(...), audio: UploadFile = File(...)
    ):
        try:
            transcript_doc = json.load(transcript.file)
        except json.JSONDecodeError as exc:
            raise BadRequest(f"transcript: invalid JSON: {exc}")
        try:
            project_id = store.create_project(transcript_doc, audio.file.read())
        except AudioFormatError:
            raise AudioFormatError("PCM16 WAV required")
        except ValueError as exc:
            raise BadRequest(f"transcript: {exc}")
        return {"id": project_id}

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        meta = store.meta(project_id)
        return {
            "id": project_id,
            "state": meta["state"],
            "progress": store.progress(project_id),
            "paragraphs": meta["paragraphs"],
            "segments": meta["segment_ranges"],
            "warnings": meta["warnings"],
            "version": len(store.overlay(project_id)),
        }

    # -- views -----------------------------------------------------------------

    @app.get("/projects/{project_id}/view")
    def get_view(
        project_id: str, target: str = "0", view: str = "final", overrides: str = ""
    ):
        if view not in ("edit_types", "diff", "final"):
            raise BadRequest(f"view must be edit_types, diff, or final, got {view!r}")
        tau = _parse_target(target)
        override_map = parse_overrides_param(overrides)
        transcript = store.transcript(project_id)
        for paragraph in override_map:
            if not (0 <= paragraph < len(transcript.paragraphs)):
                raise BadRequest(f"override references unknown paragraph {paragraph}")
        script = store.effective_script(project_id, tau, override_map)
        doc = build_view(
            transcript,
            script,
            view,
            int(tau * 100),
            override_map,
            version=len(store.overlay(project_id)),
        )
        return _stable_json(doc)

    # -- manual edits ---------------------------------------------------------------

    @app.post("/projects/{project_id}/edits")
    def apply_edit(project_id: str, body: dict):
        edit = {k: v for k, v in body.items() if k in ("kind", "index", "state", "point", "words")}
        tau = _parse_target(body.get("target", 0))
        override_map = parse_overrides_param(body.get("overrides", ""))
        overlay, applied, flag = store.append_overlay(project_id, edit)
        script = store.effective_script(project_id, tau, override_map)

        retentions = None
        purpose = body.get("purpose", "")
        cached = _outline_cache_path(store, project_id, purpose)
        if os.path.exists(cached):
            outline_doc = _load_outline(store, project_id, purpose)
            tokens = _effective_tokens(store, project_id, script)
            retentions = _retentions_for_doc(outline_doc, tokens)

        from ..edit_types import type_counts

        return {
            "applied": applied,
            "flag": flag,
            "version": len(overlay),
            "stats": script_stats(script),
            "type_counts": type_counts(script),
            "retentions": retentions,
        }

    # -- outline ------------------------------------------------------------------------

    @app.get("/projects/{project_id}/outline")
    def get_outline(
        project_id: str, purpose: str = "", target: str = "0", overrides: str = ""
    ):
        tau = _parse_target(target)
        override_map = parse_overrides_param(overrides)
        outline_doc = _load_outline(store, project_id, purpose)
        script = store.effective_script(project_id, tau, override_map)
        tokens = _effective_tokens(store, project_id, script)
        retentions = _retentions_for_doc(outline_doc, tokens)
        merged = json.loads(json.dumps(outline_doc))  # deep copy
        for group in merged["groups"]:
            for bit in group["bits"]:
                bit["retention"] = retentions[bit["id"]]
        return _stable_json(merged)

    # -- rendering ------------------------------------------------------------------------

    @app.post("/projects/{project_id}/render")
    def start_render(project_id: str, body: dict | None = None):
        body = body or {}
        tau = _parse_target(body.get("target", 0))
        override_map = parse_overrides_param(body.get("overrides", ""))
        job = jobs.start(project_id, tau, override_map)
        return {"job_id": job.id}

    @app.get("/jobs/{job_id}")
    def poll_job(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            return JSONResponse({"error": "job not found"}, status_code=404)
        return job.to_document()

    # -- audio ---------------------------------------------------------------------------

    @app.get("/projects/{project_id}/audio/{which}")
    def get_audio(project_id: str, which: str):
        if which == "original":
            return FileResponse(store.audio_path(project_id), media_type="audio/wav")
        if which == "rendered":
            path = os.path.join(store._dir(project_id), "renders", "latest.wav")
            if not os.path.exists(path):
                return JSONResponse({"error": "no rendered audio yet"}, status_code=404)
            return FileResponse(path, media_type="audio/wav")
        raise BadRequest("audio kind must be 'original' or 'rendered'")

    return app


def _outline_cache_path(store: ProjectStore, project_id: str, purpose: str) -> str:
    digest = hashlib.sha256(purpose.encode("utf-8")).hexdigest()[:16]
    return os.path.join(store._dir(project_id), "outline", f"{digest}.json")


def _load_outline(store: ProjectStore, project_id: str, purpose: str) -> dict:
    path = _outline_cache_path(store, project_id, purpose)
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    transcript = store.transcript(project_id)
    segments = store.segments(project_id)
    outline = build_outline(transcript, segments, store.gateway, purpose)
    doc = outline.to_document()
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
    os.replace(tmp, path)
    return doc


def _effective_tokens(store: ProjectStore, project_id: str, script) -> list[str]:
    transcript = store.transcript(project_id)
    tokens = normalize_segment_words([w.text for w in transcript.words])
    return apply_script(script, tokens)


def _retentions_for_doc(outline_doc: dict, tokens: list[str]) -> dict[int, float]:
    token_set = set(tokens)
    retentions = {}
    for group in outline_doc["groups"]:
        for bit in group["bits"]:
            keywords = bit["keywords"]
            if not keywords:
                retentions[bit["id"]] = 100.0
            else:
                present = sum(1 for k in keywords if k in token_set)
                retentions[bit["id"]] = 100.0 * present / len(keywords)
    return retentions
