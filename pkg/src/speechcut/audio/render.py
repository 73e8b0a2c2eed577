"""Render a splice plan against source audio.

Kept spans are copied sample-exactly; synthesize actions come from the
provider (silence with the stub). Adjacent output chunks are joined with a
10 ms linear crossfade so cuts do not click; a provider failure degrades
that action to silence rather than aborting the render.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from .clip import AudioClip, silence
from .plan import CUT, KEEP_SPAN, SYNTHESIZE, AudioEditPlan

log = logging.getLogger(__name__)

CROSSFADE_S = 0.010  # seconds
SOURCE_DURATION_SLACK = 0.050  # plan/audio agreement tolerance, seconds


class RenderError(ValueError):
    pass


class SynthesisProvider(Protocol):
    """Pluggable speech synthesizer.

    May return one clip or up to five alternatives; returned clips must share
    the context clip's sample rate.
    """

    name: str

    def synthesize(
        self, context_audio: AudioClip, target_text: str, duration_hint: float
    ) -> AudioClip | list[AudioClip]: ...


class SilenceStub:
    """Stand-in synthesizer: silence of exactly the hinted duration."""

    name = "silence"

    def synthesize(
        self, context_audio: AudioClip, target_text: str, duration_hint: float
    ) -> AudioClip:
        return silence(duration_hint, context_audio.sample_rate)


@dataclass
class RenderResult:
    clip: AudioClip
    warnings: list[str] = field(default_factory=list)
    splice_count: int = 0


def _pick_alternative(
    clips: list[AudioClip], max_duration: float | None, predicted: float
) -> AudioClip:
    """Transitions take the shortest clip within the cap (else shortest);
    content insertions take the clip closest to the predicted duration."""
    if max_duration is not None:
        within = [c for c in clips if c.duration <= max_duration]
        pool = within or clips
        return min(pool, key=lambda c: c.duration)
    return min(clips, key=lambda c: abs(c.duration - predicted))


def _crossfade_concat(chunks: list[np.ndarray], sample_rate: int) -> tuple[np.ndarray, int]:
    """Overlap-add with linear ramps; returns (samples, splice count)."""
    chunks = [c for c in chunks if len(c)]
    if not chunks:
        return np.zeros(0, dtype=np.int16), 0
    fade_n = int(round(CROSSFADE_S * sample_rate))
    out = chunks[0].astype(np.float64)
    splices = 0
    for chunk in chunks[1:]:
        splices += 1
        n = min(fade_n, len(out), len(chunk))
        nxt = chunk.astype(np.float64)
        if n > 0:
            ramp = np.linspace(0.0, 1.0, n, endpoint=False)
            overlap = out[-n:] * (1.0 - ramp) + nxt[:n] * ramp
            out = np.concatenate([out[:-n], overlap, nxt[n:]])
        else:
            out = np.concatenate([out, nxt])
    clipped = np.clip(np.rint(out), -32768, 32767).astype(np.int16)
    return clipped, splices


def render(
    plan: AudioEditPlan,
    source: AudioClip,
    provider: SynthesisProvider | None = None,
) -> RenderResult:
    """Execute the plan over the source clip."""
    provider = provider or SilenceStub()
    if abs(plan.source_duration - source.duration) > SOURCE_DURATION_SLACK:
        raise RenderError(
            f"plan built for {plan.source_duration:.3f}s audio, "
            f"source is {source.duration:.3f}s"
        )

    warnings: list[str] = []
    chunks: list[np.ndarray] = []
    for action in plan.actions:
        if action.kind == KEEP_SPAN:
            chunks.append(source.slice_seconds(*action.audio_range))
        elif action.kind == CUT:
            continue
        elif action.kind == SYNTHESIZE:
            if action.predicted_duration <= 0:
                continue
            context = source
            if action.context_range is not None:
                context = AudioClip(
                    samples=source.slice_seconds(*action.context_range),
                    sample_rate=source.sample_rate,
                )
            try:
                produced = provider.synthesize(
                    context, action.text, action.predicted_duration
                )
            except Exception as exc:
                warnings.append(
                    f"synthesis failed ({exc}); substituting "
                    f"{action.predicted_duration:.3f}s of silence"
                )
                produced = silence(action.predicted_duration, source.sample_rate)
            clips = produced if isinstance(produced, list) else [produced]
            for c in clips:
                if c.sample_rate != source.sample_rate:
                    raise RenderError("provider returned a mismatched sample rate")
            chosen = _pick_alternative(
                clips, action.max_duration, action.predicted_duration
            )
            chunks.append(chosen.samples)
        else:
            raise RenderError(f"unknown plan action {action.kind!r}")

    samples, splices = _crossfade_concat(chunks, source.sample_rate)
    return RenderResult(
        clip=AudioClip(samples=samples, sample_rate=source.sample_rate),
        warnings=warnings,
        splice_count=splices,
    )
