"""Project persistence and effective-script composition.

One directory per project: source transcript and audio, one precomputed
shorten result per nonzero target, the manual edit overlay, and outline
caches. Updates are atomic (write-temp + rename); per-project mutation goes
through a single lock so interleaved edits apply in a total order.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field

from ..alignment import EditOp, EditScript, merge_scripts, offset_script
from ..edit_types import classify_script, classify_tokens_rule_based
from ..gateway import Gateway
from ..shortener import resolve_segments, shorten_transcript
from ..transcript import (
    COMPRESSION_TARGETS,
    Segment,
    Transcript,
    load_transcript,
    segments_from_ranges,
)

NONZERO_TARGETS = (0.15, 0.25, 0.50, 0.75)
VIEW_NAMES = ("edit_types", "diff", "final")


class ProjectNotFound(KeyError):
    pass


class NotReady(RuntimeError):
    """Requested target's precompute has not finished yet."""

    def __init__(self, progress: dict):
        super().__init__("precompute in progress")
        self.progress = progress


class BadRequest(ValueError):
    pass


def _atomic_write(path: str, data: bytes) -> None:
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _write_json(path: str, doc) -> None:
    _atomic_write(path, (json.dumps(doc, sort_keys=True, indent=1) + "\n").encode("utf-8"))


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def parse_overrides_param(raw: str | None) -> dict[int, float]:
    """Parse an overrides query string like '1=15,3=50'."""
    overrides: dict[int, float] = {}
    if not raw:
        return overrides
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            para, pct = chunk.split("=", 1)
            tau = int(pct) / 100.0
            if tau not in COMPRESSION_TARGETS:
                raise ValueError
            overrides[int(para)] = tau
        except ValueError:
            raise BadRequest(f"bad override {chunk!r}; expected PARA=TARGET")
    return overrides


@dataclass
class ProjectHandles:
    """In-memory per-project concurrency state."""

    write_lock: threading.Lock = field(default_factory=threading.Lock)
    render_lock: threading.Lock = field(default_factory=threading.Lock)


class ProjectStore:
    def __init__(
        self,
        root: str,
        gateway: Gateway | None = None,
        n_candidates: int = 25,
        precompute_async: bool = True,
    ):
        self.root = root
        os.makedirs(root, exist_ok=True)
        self.gateway = gateway or Gateway()
        self.n_candidates = n_candidates
        self.precompute_async = precompute_async
        self._handles: dict[str, ProjectHandles] = {}
        self._handles_lock = threading.Lock()

    # -- plumbing -----------------------------------------------------------

    def _dir(self, project_id: str) -> str:
        path = os.path.join(self.root, project_id)
        if not os.path.isdir(path):
            raise ProjectNotFound(project_id)
        return path

    def handles(self, project_id: str) -> ProjectHandles:
        with self._handles_lock:
            if project_id not in self._handles:
                self._handles[project_id] = ProjectHandles()
            return self._handles[project_id]

    def list_projects(self) -> list[str]:
        return sorted(
            d for d in os.listdir(self.root) if os.path.isdir(os.path.join(self.root, d))
        )

    def transcript(self, project_id: str) -> Transcript:
        return load_transcript(_read_json(os.path.join(self._dir(project_id), "transcript.json")))

    def audio_path(self, project_id: str) -> str:
        return os.path.join(self._dir(project_id), "audio.wav")

    def meta(self, project_id: str) -> dict:
        return _read_json(os.path.join(self._dir(project_id), "meta.json"))

    def _save_meta(self, project_id: str, meta: dict) -> None:
        _write_json(os.path.join(self._dir(project_id), "meta.json"), meta)

    def segments(self, project_id: str) -> list[Segment]:
        meta = self.meta(project_id)
        transcript = self.transcript(project_id)
        return segments_from_ranges(
            transcript, [tuple(r) for r in meta["segment_ranges"]]
        )

    # -- lifecycle ------------------------------------------------------------

    def create_project(self, transcript_doc: dict, audio_bytes: bytes) -> str:
        from ..audio import load_wav

        transcript = load_transcript(transcript_doc)  # validates
        load_wav(audio_bytes)  # validates PCM16 WAV
        project_id = uuid.uuid4().hex[:12]
        path = os.path.join(self.root, project_id)
        os.makedirs(os.path.join(path, "results"), exist_ok=True)
        os.makedirs(os.path.join(path, "outline"), exist_ok=True)
        os.makedirs(os.path.join(path, "renders"), exist_ok=True)
        _write_json(os.path.join(path, "transcript.json"), transcript.to_document())
        _atomic_write(os.path.join(path, "audio.wav"), audio_bytes)

        segments, warnings = resolve_segments(transcript, self.gateway)
        meta = {
            "state": "precomputing",
            "ready_targets": [],
            "segment_ranges": [list(s.word_range) for s in segments],
            "paragraphs": [list(p) for p in transcript.paragraphs],
            "warnings": warnings,
        }
        _write_json(os.path.join(path, "meta.json"), meta)
        _write_json(os.path.join(path, "overlay.json"), [])

        if self.precompute_async:
            threading.Thread(
                target=self._precompute, args=(project_id,), daemon=True
            ).start()
        else:
            self._precompute(project_id)
        return project_id

    def _precompute(self, project_id: str) -> None:
        transcript = self.transcript(project_id)
        segments = self.segments(project_id)
        for tau in NONZERO_TARGETS:
            result = shorten_transcript(
                transcript,
                tau,
                gateway=self.gateway,
                n=self.n_candidates,
                segments=segments,
            )
            doc = result.to_document()
            # Edit types are precomputed here so views never wait on a model.
            for entry, shortening in zip(doc["segments"], result.per_segment):
                words = transcript.word_texts(*shortening.segment.word_range)
                labeled = classify_script(
                    shortening.winner.script, words, gateway=self.gateway
                )
                entry["winner"]["script"] = labeled.to_document()
            _write_json(
                os.path.join(self._dir(project_id), "results", f"{int(tau * 100)}.json"),
                doc,
            )
            meta = self.meta(project_id)
            meta["ready_targets"] = sorted(set(meta["ready_targets"]) | {int(tau * 100)})
            if len(meta["ready_targets"]) == len(NONZERO_TARGETS):
                meta["state"] = "ready"
            self._save_meta(project_id, meta)

    def result_doc(self, project_id: str, tau: float) -> dict:
        pct = int(tau * 100)
        path = os.path.join(self._dir(project_id), "results", f"{pct}.json")
        if not os.path.exists(path):
            raise NotReady(self.progress(project_id))
        return _read_json(path)

    def progress(self, project_id: str) -> dict:
        meta = self.meta(project_id)
        return {
            "state": meta["state"],
            "ready_targets": meta["ready_targets"],
            "total_targets": len(NONZERO_TARGETS),
        }

    def require_ready(self, project_id: str, taus: set[float]) -> None:
        needed = {int(t * 100) for t in taus if t > 0}
        ready = set(self.meta(project_id)["ready_targets"])
        if not needed <= ready:
            raise NotReady(self.progress(project_id))

    # -- overlay -----------------------------------------------------------------

    def overlay(self, project_id: str) -> list[dict]:
        return _read_json(os.path.join(self._dir(project_id), "overlay.json"))

    def append_overlay(
        self, project_id: str, edit: dict
    ) -> tuple[list[dict], bool, str | None]:
        """Append under the project write lock; returns (overlay, applied, flag)."""
        transcript = self.transcript(project_id)
        with self.handles(project_id).write_lock:
            overlay = self.overlay(project_id)
            applied, flag = self._validate_edit(transcript, overlay, edit)
            if applied:
                overlay.append(edit)
                _write_json(os.path.join(self._dir(project_id), "overlay.json"), overlay)
            return overlay, applied, flag

    def _validate_edit(
        self, transcript: Transcript, overlay: list[dict], edit: dict
    ) -> tuple[bool, str | None]:
        kind = edit.get("kind")
        total = len(transcript.words)
        if kind == "toggle":
            index = edit.get("index")
            if not isinstance(index, int) or not (0 <= index < total):
                raise BadRequest(f"toggle index {index!r} out of range")
            desired = edit.get("state")
            if desired not in (None, "keep", "remove"):
                raise BadRequest(f"toggle state must be keep/remove, got {desired!r}")
            if desired is not None:
                current = self._word_state_after(overlay, index)
                if current == desired:
                    return False, f"word {index} already {desired}"
            return True, None
        if kind == "insert":
            point = edit.get("point")
            words = edit.get("words")
            if not isinstance(point, int) or not (0 <= point <= total):
                raise BadRequest(f"insert point {point!r} out of range")
            if not words or not all(isinstance(w, str) and w.strip() for w in words):
                raise BadRequest("insert needs a non-empty word list")
            return True, None
        raise BadRequest(f"unknown edit kind {kind!r}")

    @staticmethod
    def _word_state_after(overlay: list[dict], index: int) -> str | None:
        """Manual state of a word considering only the overlay (None = system)."""
        state = None
        for edit in overlay:
            if edit.get("kind") == "toggle" and edit.get("index") == index:
                if edit.get("state"):
                    state = edit["state"]
                else:
                    state = None  # directionless flip depends on system state
        return state

    # -- effective script ----------------------------------------------------------

    def compose_system_script(
        self, project_id: str, global_tau: float, overrides: dict[int, float]
    ) -> EditScript:
        """Merge per-segment winners at each segment's effective target."""
        transcript = self.transcript(project_id)
        segments = self.segments(project_id)
        total = len(transcript.words)
        taus_needed = {global_tau} | set(overrides.values())
        self.require_ready(project_id, taus_needed)

        docs = {
            tau: self.result_doc(project_id, tau) for tau in taus_needed if tau > 0
        }
        pieces = []
        for i, segment in enumerate(segments):
            paragraph = transcript.paragraph_of_word(segment.word_range[0])
            tau = overrides.get(paragraph, global_tau)
            if tau == 0:
                continue
            entry = docs[tau]["segments"][i]
            script = EditScript.from_document(entry["winner"]["script"])
            pieces.append(offset_script(script, segment.word_range[0], total))
        return merge_scripts(pieces, total)

    def effective_script(
        self,
        project_id: str,
        global_tau: float,
        overrides: dict[int, float],
    ) -> EditScript:
        """System script at the given targets with the manual overlay replayed
        on top; manual decisions win at the word level."""
        transcript = self.transcript(project_id)
        system = self.compose_system_script(project_id, global_tau, overrides)
        overlay = self.overlay(project_id)
        return apply_overlay(transcript, system, overlay)


def apply_overlay(
    transcript: Transcript, system: EditScript, overlay: list[dict]
) -> EditScript:
    """Rebuild the script from the system removed-set plus manual edits."""
    total = len(transcript.words)
    removed = system.removed_indices()
    insertions: dict[int, list[str]] = {}
    labels: dict[tuple, str | None] = {}
    for op in system.ops:
        if op.inserted_words:
            insertions.setdefault(op.original_range[0], []).extend(op.inserted_words)
        labels[(op.original_range, tuple(op.inserted_words))] = op.edit_type

    for edit in overlay:
        if edit["kind"] == "toggle":
            index = edit["index"]
            desired = edit.get("state")
            if desired == "keep":
                removed.discard(index)
            elif desired == "remove":
                removed.add(index)
            elif index in removed:
                removed.discard(index)
            else:
                removed.add(index)
        elif edit["kind"] == "insert":
            insertions.setdefault(edit["point"], []).extend(edit["words"])

    return rebuild_script(transcript, removed, insertions, labels)


def rebuild_script(
    transcript: Transcript,
    removed: set[int],
    insertions: dict[int, list[str]],
    labels: dict[tuple, str | None] | None = None,
) -> EditScript:
    """Build a grouped script from a removed-index set and insertion anchors."""
    labels = labels or {}
    total = len(transcript.words)
    word_texts = [w.text for w in transcript.words]

    runs: list[list[int]] = []
    for index in sorted(removed):
        if runs and index == runs[-1][-1] + 1:
            runs[-1].append(index)
        else:
            runs.append([index])

    attached: dict[int, list[str]] = {}
    standalone: list[tuple[int, list[str]]] = []
    for point in sorted(insertions):
        words = insertions[point]
        target_run = None
        for r, run in enumerate(runs):
            if run[0] <= point < run[-1] + 1:
                target_run = r
                break
        if target_run is None:
            standalone.append((point, words))
        else:
            attached.setdefault(target_run, []).extend(words)

    ops: list[EditOp] = []
    for r, run in enumerate(runs):
        rng = (run[0], run[-1] + 1)
        inserted = tuple(attached.get(r, ()))
        kind = "replacement" if inserted else "deletion"
        ops.append(EditOp(kind=kind, original_range=rng, inserted_words=inserted))
    for point, words in standalone:
        ops.append(EditOp(kind="insertion", original_range=(point, point), inserted_words=tuple(words)))

    ops.sort(key=lambda op: (op.original_range[0], op.original_range[1]))

    labeled_ops = []
    for op in ops:
        label = labels.get((op.original_range, tuple(op.inserted_words)))
        if label is None:
            lo, hi = op.original_range
            label = classify_tokens_rule_based(
                word_texts[lo:hi],
                list(op.inserted_words),
                " ".join(word_texts[max(0, lo - 5) : lo]),
                " ".join(word_texts[hi : hi + 5]),
            )
        labeled_ops.append(op.with_edit_type(label))

    deleted = sum(op.deleted_count for op in labeled_ops)
    inserted_count = sum(len(op.inserted_words) for op in labeled_ops)
    return EditScript(
        ops=tuple(labeled_ops),
        original_word_count=total,
        result_word_count=total - deleted + inserted_count,
    )
