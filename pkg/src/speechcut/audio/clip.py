"""PCM16 mono WAV clips: the only audio representation the engine touches.

Stereo inputs are downmixed on load with a warning; anything that is not
16-bit PCM is rejected so sample arithmetic stays exact.
"""

from __future__ import annotations

import io
import logging
import wave
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)


class AudioFormatError(ValueError):
    """Raised for non-PCM16 or otherwise unreadable WAV input."""


@dataclass(frozen=True)
class AudioClip:
    """Immutable mono PCM16 clip."""

    samples: np.ndarray  # int16, 1-D
    sample_rate: int  # Hz

    def __post_init__(self) -> None:
        if self.sample_rate <= 0:
            raise AudioFormatError(f"sample_rate must be positive, got {self.sample_rate}")
        if self.samples.dtype != np.int16 or self.samples.ndim != 1:
            raise AudioFormatError("samples must be a 1-D int16 array")

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate

    def seconds_to_sample(self, t: float) -> int:
        return int(round(t * self.sample_rate))

    def slice_seconds(self, start: float, end: float) -> np.ndarray:
        lo = max(0, self.seconds_to_sample(start))
        hi = min(len(self.samples), self.seconds_to_sample(end))
        return self.samples[lo:hi]


def silence(duration_s: float, sample_rate: int) -> AudioClip:
    n = max(0, int(round(duration_s * sample_rate)))
    return AudioClip(samples=np.zeros(n, dtype=np.int16), sample_rate=sample_rate)


def load_wav(source: str | bytes) -> AudioClip:
    """Read a RIFF WAV file (path or raw bytes) as a mono PCM16 clip."""
    fh = io.BytesIO(source) if isinstance(source, bytes) else source
    try:
        with wave.open(fh, "rb") as wav:
            if wav.getsampwidth() != 2:
                raise AudioFormatError("PCM16 WAV required")
            if wav.getcomptype() != "NONE":
                raise AudioFormatError("PCM16 WAV required")
            rate = wav.getframerate()
            channels = wav.getnchannels()
            frames = wav.readframes(wav.getnframes())
    except wave.Error as exc:
        raise AudioFormatError(f"unreadable WAV: {exc}") from exc

    data = np.frombuffer(frames, dtype=np.int16)
    if channels > 1:
        log.warning("downmixing %d-channel input to mono", channels)
        data = data.reshape(-1, channels).mean(axis=1).astype(np.int16)
    return AudioClip(samples=data, sample_rate=rate)


def save_wav(clip: AudioClip, target: str) -> None:
    with wave.open(target, "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(clip.sample_rate)
        wav.writeframes(clip.samples.tobytes())


def wav_bytes(clip: AudioClip) -> bytes:
    buf = io.BytesIO()
    with wave.open(buf, "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(clip.sample_rate)
        wav.writeframes(clip.samples.tobytes())
    return buf.getvalue()
