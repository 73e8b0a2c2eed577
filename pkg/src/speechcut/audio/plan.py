"""Compile an edit script plus word timings into a timestamped splice plan.

Keep and cut actions tile the original timeline. Every deletion cut gets a
transition synthesize that re-speaks the trailing half of the word before
and the leading half of the word after the splice (capped at 0.6 s), unless
a natural pause lets the splice land in silence. Insertions and replacements
get synthesize actions sized by a character-rate duration prediction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..alignment import EditScript
from ..transcript import Transcript, Word

log = logging.getLogger(__name__)

KEEP_SPAN = "keep_span"
CUT = "cut"
SYNTHESIZE = "synthesize"

TRANSITION_MAX_DURATION = 0.6  # seconds
CONTEXT_WINDOW = 10.0  # seconds of surrounding audio given to the synthesizer
PAUSE_THRESHOLD = 0.2  # inter-word gap treated as a natural pause
CONTEXT_WORDS = 5  # words per side used for duration prediction


class PlanError(ValueError):
    """Raised when a script cannot be compiled against the transcript."""


@dataclass(frozen=True)
class PlanAction:
    """One step of the splice plan, ordered by original-audio position."""

    kind: str
    audio_range: tuple[float, float] | None = None  # keep/cut
    text: str = ""  # synthesize
    context_range: tuple[float, float] | None = None
    resynth_range: tuple[float, float] | None = None
    predicted_duration: float = 0.0
    max_duration: float | None = None  # 0.6 s for transitions

    def to_document(self) -> dict:
        def rounded(pair):
            return [round(pair[0], 3), round(pair[1], 3)] if pair else None

        doc: dict = {"kind": self.kind}
        if self.kind in (KEEP_SPAN, CUT):
            doc["range"] = rounded(self.audio_range)
        else:
            doc.update(
                {
                    "text": self.text,
                    "context_range": rounded(self.context_range),
                    "resynth_range": rounded(self.resynth_range),
                    "predicted_duration": round(self.predicted_duration, 3),
                    "max_duration": self.max_duration,
                }
            )
        return doc

    @classmethod
    def from_document(cls, doc: dict) -> "PlanAction":
        if doc["kind"] in (KEEP_SPAN, CUT):
            return cls(kind=doc["kind"], audio_range=tuple(doc["range"]))
        return cls(
            kind=doc["kind"],
            text=doc.get("text", ""),
            context_range=tuple(doc["context_range"]) if doc.get("context_range") else None,
            resynth_range=tuple(doc["resynth_range"]) if doc.get("resynth_range") else None,
            predicted_duration=doc.get("predicted_duration", 0.0),
            max_duration=doc.get("max_duration"),
        )


@dataclass
class AudioEditPlan:
    """Ordered splice actions plus duration bookkeeping."""

    actions: list[PlanAction] = field(default_factory=list)
    source_duration: float = 0.0

    @property
    def predicted_output_duration(self) -> float:
        total = 0.0
        for a in self.actions:
            if a.kind == KEEP_SPAN:
                total += a.audio_range[1] - a.audio_range[0]
            elif a.kind == SYNTHESIZE:
                total += a.predicted_duration
        return total

    @property
    def splice_count(self) -> int:
        chunks = sum(
            1
            for a in self.actions
            if a.kind == KEEP_SPAN or (a.kind == SYNTHESIZE and a.predicted_duration > 0)
        )
        return max(0, chunks - 1)

    def to_document(self) -> dict:
        return {
            "actions": [a.to_document() for a in self.actions],
            "source_duration": round(self.source_duration, 3),
            "predicted_output_duration": round(self.predicted_output_duration, 3),
        }

    @classmethod
    def from_document(cls, doc: dict) -> "AudioEditPlan":
        return cls(
            actions=[PlanAction.from_document(a) for a in doc["actions"]],
            source_duration=doc["source_duration"],
        )


def predict_insert_duration(inserted_text: str, context_words: list[Word]) -> float:
    """Character-rate proxy for speech duration of inserted text.

    Speaking rate is estimated from the surrounding words' seconds-per-
    character; spaces do not count as characters.
    """
    if not context_words:
        raise PlanError("context_words must be non-empty")
    chars = sum(len(tok) for tok in inserted_text.split())
    if chars == 0:
        return 0.0
    total_duration = sum(w.end - w.start for w in context_words)
    total_chars = sum(len(w.text) for w in context_words)
    if total_chars == 0:
        raise PlanError("context words carry no characters")
    return (total_duration / total_chars) * chars


def _context_range(center: float, source_duration: float) -> tuple[float, float]:
    half = CONTEXT_WINDOW / 2
    lo = max(0.0, center - half)
    hi = min(source_duration, lo + CONTEXT_WINDOW)
    lo = max(0.0, min(lo, hi - CONTEXT_WINDOW if hi - CONTEXT_WINDOW > 0 else 0.0))
    return (lo, hi)


def _context_words(words: tuple[Word, ...], lo: int, hi: int) -> list[Word]:
    before = list(words[max(0, lo - CONTEXT_WORDS) : lo])
    after = list(words[hi : hi + CONTEXT_WORDS])
    return (before + after) or list(words[:CONTEXT_WORDS])


def _word_midpoint(word: Word) -> float:
    return (word.start + word.end) / 2


def build_plan(script: EditScript, transcript: Transcript) -> AudioEditPlan:
    """Compile a transcript-coordinate edit script into a splice plan."""
    words = transcript.words
    if script.original_word_count != len(words):
        raise PlanError(
            f"script covers {script.original_word_count} words, transcript has {len(words)}"
        )
    duration = transcript.audio_duration
    plan = AudioEditPlan(source_duration=duration)
    cursor = 0.0

    def add_keep(until: float) -> None:
        nonlocal cursor
        if until > cursor:
            plan.actions.append(PlanAction(kind=KEEP_SPAN, audio_range=(cursor, until)))
            cursor = until

    for op in script.ops:
        lo, hi = op.original_range
        if op.kind == "insertion":
            if lo > 0:
                anchor_start = words[lo - 1].end
                anchor_end = words[lo].start if lo < len(words) else words[lo - 1].end
            else:
                anchor_start = anchor_end = words[0].start
            anchor_start = max(anchor_start, cursor)
            anchor_end = max(anchor_end, anchor_start)
            add_keep(anchor_start)
            text = " ".join(op.inserted_words)
            context = _context_words(words, lo, lo)
            predicted = predict_insert_duration(text, context)
            if predicted <= 0:
                log.info("dropping empty insertion at word %d", lo)
                continue
            plan.actions.append(
                PlanAction(
                    kind=SYNTHESIZE,
                    text=text,
                    context_range=_context_range((anchor_start + anchor_end) / 2, duration),
                    resynth_range=(anchor_start, anchor_end),
                    predicted_duration=predicted,
                )
            )
            continue

        # deletion or replacement: cut the deleted words' span
        cut_start = max(words[lo].start, cursor)
        cut_end = max(words[hi - 1].end, cut_start)
        add_keep(cut_start)
        plan.actions.append(PlanAction(kind=CUT, audio_range=(cut_start, cut_end)))
        cursor = cut_end

        prev_word = words[lo - 1] if lo > 0 else None
        next_word = words[hi] if hi < len(words) else None

        # Half-word resynthesis spans; a side is skipped when the splice can
        # land in a natural pause there, or at the transcript edge.
        left = 0.0
        resynth_start = cut_start
        if prev_word is not None and (cut_start - prev_word.end) < PAUSE_THRESHOLD:
            resynth_start = _word_midpoint(prev_word)
            left = cut_start - resynth_start
        right = 0.0
        resynth_end = cut_end
        if next_word is not None and (next_word.start - cut_end) < PAUSE_THRESHOLD:
            resynth_end = _word_midpoint(next_word)
            right = resynth_end - cut_end

        if op.kind == "replacement":
            text = " ".join(op.inserted_words)
            context = _context_words(words, lo, hi)
            predicted = predict_insert_duration(text, context)
            plan.actions.append(
                PlanAction(
                    kind=SYNTHESIZE,
                    text=text,
                    context_range=_context_range((cut_start + cut_end) / 2, duration),
                    resynth_range=(resynth_start, resynth_end),
                    predicted_duration=predicted,
                )
            )
        else:
            predicted = min(max(0.0, left) + max(0.0, right), TRANSITION_MAX_DURATION)
            if predicted <= 0:
                log.info(
                    "deletion at words [%d, %d) splices into pauses on both sides; "
                    "no transition synthesized",
                    lo,
                    hi,
                )
                continue
            neighbor_text = " ".join(
                w.text for w in (prev_word, next_word) if w is not None
            )
            plan.actions.append(
                PlanAction(
                    kind=SYNTHESIZE,
                    text=neighbor_text,
                    context_range=_context_range((cut_start + cut_end) / 2, duration),
                    resynth_range=(resynth_start, resynth_end),
                    predicted_duration=predicted,
                    max_duration=TRANSITION_MAX_DURATION,
                )
            )

    add_keep(duration)
    return plan
