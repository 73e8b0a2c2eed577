"""Audio splice planning and rendering over PCM16 mono WAV."""

from .clip import AudioClip, AudioFormatError, load_wav, save_wav, silence, wav_bytes
from .plan import (
    CUT,
    KEEP_SPAN,
    SYNTHESIZE,
    TRANSITION_MAX_DURATION,
    AudioEditPlan,
    PlanAction,
    PlanError,
    build_plan,
    predict_insert_duration,
)
from .render import RenderError, RenderResult, SilenceStub, SynthesisProvider, render

__all__ = [
    "AudioClip",
    "AudioFormatError",
    "AudioEditPlan",
    "PlanAction",
    "PlanError",
    "RenderError",
    "RenderResult",
    "SilenceStub",
    "SynthesisProvider",
    "TRANSITION_MAX_DURATION",
    "KEEP_SPAN",
    "CUT",
    "SYNTHESIZE",
    "build_plan",
    "load_wav",
    "predict_insert_duration",
    "render",
    "save_wav",
    "silence",
    "wav_bytes",
]
