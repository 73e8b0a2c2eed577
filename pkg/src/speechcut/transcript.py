"""Word-aligned transcript model: ingestion, normalization, sentence splitting.

The transcript is the source of truth for all downstream editing. Words carry
start/end timestamps in seconds as produced by a forced aligner; paragraphs
are half-open word-index ranges covering the whole word list.
"""

from __future__ import annotations

import json
import re
import string
from dataclasses import dataclass, field

# Forced aligners routinely emit tiny overlaps between consecutive words.
OVERLAP_TOLERANCE = 0.01

# Enumerated compression targets: fraction of words to remove. 0 = no edits.
COMPRESSION_TARGETS = (0.0, 0.15, 0.25, 0.50, 0.75)


class TranscriptFormatError(ValueError):
    """Raised when an aligned-transcript document is malformed."""


class TranscriptValidationError(ValueError):
    """Raised when a structurally well-formed document violates an invariant."""


@dataclass(frozen=True)
class Word:
    """A single transcribed word with its audio timestamps."""

    index: int
    text: str
    start: float  # seconds
    end: float  # seconds


@dataclass(frozen=True)
class Segment:
    """A semantically distinct run of words, the unit of shortening."""

    id: int
    word_range: tuple[int, int]  # half-open [start, end)
    text: str


@dataclass(frozen=True)
class Transcript:
    """Immutable word-aligned transcript with paragraph structure."""

    words: tuple[Word, ...]
    paragraphs: tuple[tuple[int, int], ...]  # half-open word-index ranges
    audio_duration: float  # seconds

    def word_texts(self, start: int = 0, end: int | None = None) -> list[str]:
        end = len(self.words) if end is None else end
        return [w.text for w in self.words[start:end]]

    def text(self) -> str:
        return " ".join(w.text for w in self.words)

    def paragraph_text(self, index: int) -> str:
        lo, hi = self.paragraphs[index]
        return " ".join(self.word_texts(lo, hi))

    def paragraph_of_word(self, word_index: int) -> int:
        for p, (lo, hi) in enumerate(self.paragraphs):
            if lo <= word_index < hi:
                return p
        raise IndexError(f"word index {word_index} outside all paragraphs")

    def to_document(self) -> dict:
        return {
            "audio_duration": self.audio_duration,
            "words": [
                {"text": w.text, "start": w.start, "end": w.end} for w in self.words
            ],
            "paragraphs": [list(p) for p in self.paragraphs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True)


@dataclass(frozen=True)
class CompressionTarget:
    """Fraction of words to remove; restricted to the supported slider stops."""

    tau: float

    def __post_init__(self) -> None:
        if self.tau not in COMPRESSION_TARGETS:
            allowed = ", ".join(str(t) for t in COMPRESSION_TARGETS)
            raise ValueError(f"tau must be one of {allowed}, got {self.tau}")

    @classmethod
    def from_percent(cls, percent: int | float) -> "CompressionTarget":
        return cls(round(float(percent) / 100.0, 2))


def _validate_words(raw_words: list) -> list[Word]:
    words: list[Word] = []
    for i, entry in enumerate(raw_words):
        if not isinstance(entry, dict):
            raise TranscriptFormatError(f"words[{i}] is not an object")
        missing = [k for k in ("text", "start", "end") if k not in entry]
        if missing:
            raise TranscriptFormatError(f"words[{i}] missing field {missing[0]!r}")
        text = entry["text"]
        if not isinstance(text, str) or not text.strip():
            raise TranscriptFormatError(f"words[{i}].text must be a non-empty string")
        try:
            start = float(entry["start"])
            end = float(entry["end"])
        except (TypeError, ValueError):
            raise TranscriptFormatError(f"words[{i}] has non-numeric timestamps")
        if start < 0:
            raise TranscriptValidationError(f"negative start timestamp at word {i}")
        if end <= start:
            raise TranscriptValidationError(f"end <= start at word {i}")
        if words and start < words[-1].end - OVERLAP_TOLERANCE:
            raise TranscriptValidationError(f"unordered timestamps at word {i}")
        words.append(Word(index=i, text=text.strip(), start=start, end=end))
    return words


def _validate_paragraphs(raw: list, word_count: int) -> tuple[tuple[int, int], ...]:
    ranges: list[tuple[int, int]] = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise TranscriptFormatError(f"paragraphs[{i}] is not a [start, end) pair")
        lo, hi = entry
        if not isinstance(lo, int) or not isinstance(hi, int):
            raise TranscriptFormatError(f"paragraphs[{i}] indices must be integers")
        if not (0 <= lo < hi <= word_count):
            raise TranscriptValidationError(f"paragraphs[{i}] range out of bounds")
        ranges.append((lo, hi))

    cursor = 0
    for i, (lo, hi) in enumerate(ranges):
        if lo != cursor:
            raise TranscriptValidationError(f"gap at index {cursor}")
        cursor = hi
    if cursor != word_count:
        raise TranscriptValidationError(f"gap at index {cursor}")
    return tuple(ranges)


def load_transcript(source: str | dict) -> Transcript:
    """Parse and validate an aligned-transcript document (JSON text or dict).

    The document format: {"audio_duration": seconds, "words": [{"text",
    "start", "end"}, ...], "paragraphs": [[lo, hi], ...]}. Paragraphs are
    optional; absent means one paragraph spanning the transcript. Unknown
    fields are ignored.
    """
    if isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise TranscriptFormatError(f"invalid JSON: {exc}") from exc
    else:
        doc = source
    if not isinstance(doc, dict):
        raise TranscriptFormatError("top-level value must be an object")
    if "words" not in doc:
        raise TranscriptFormatError("missing field 'words'")
    if not isinstance(doc["words"], list) or not doc["words"]:
        raise TranscriptFormatError("'words' must be a non-empty array")

    words = _validate_words(doc["words"])

    if "paragraphs" in doc and doc["paragraphs"]:
        if not isinstance(doc["paragraphs"], list):
            raise TranscriptFormatError("'paragraphs' must be an array")
        paragraphs = _validate_paragraphs(doc["paragraphs"], len(words))
    else:
        paragraphs = ((0, len(words)),)

    last_end = words[-1].end
    duration = doc.get("audio_duration", last_end)
    try:
        duration = float(duration)
    except (TypeError, ValueError):
        raise TranscriptFormatError("'audio_duration' must be a number")
    if duration < last_end:
        duration = last_end

    return Transcript(words=tuple(words), paragraphs=paragraphs, audio_duration=duration)


def load_transcript_file(path: str) -> Transcript:
    with open(path, "r", encoding="utf-8") as fh:
        return load_transcript(fh.read())


_SENTENCE_BOUNDARY = re.compile(r"(?<=[.!?])\s+")


def split_sentences(text: str) -> list[str]:
    """Split text into sentences at '.', '!' or '?' followed by whitespace.

    Deliberately naive: abbreviations may over-split, which is acceptable
    because coverage scoring applies the same splitter to both sides.
    """
    normalized = " ".join(text.split())
    if not normalized:
        return []
    return [s for s in _SENTENCE_BOUNDARY.split(normalized) if s]


_EDGE_PUNCT = string.punctuation + "‘’“”–—…"


def normalize_token(word_text: str) -> str:
    """Lowercase and strip leading/trailing punctuation; interior kept.

    Pure-punctuation input normalizes to the empty string.
    """
    return word_text.lower().strip(_EDGE_PUNCT + string.whitespace)


def normalize_tokens(texts: list[str]) -> list[str]:
    """Normalize a token list, dropping tokens that normalize to empty."""
    out = []
    for t in texts:
        n = normalize_token(t)
        if n:
            out.append(n)
    return out


def tokenize_text(text: str) -> list[str]:
    """Whitespace tokenization of free text (surface forms)."""
    return text.split()


@dataclass
class SegmentationResult:
    """Segments plus a flag for gateway responses that needed repair."""

    segments: list[Segment]
    repaired: bool = False
    warnings: list[str] = field(default_factory=list)


def segments_from_ranges(transcript: Transcript, ranges: list[tuple[int, int]]) -> list[Segment]:
    segs = []
    for i, (lo, hi) in enumerate(ranges):
        segs.append(
            Segment(id=i, word_range=(lo, hi), text=" ".join(transcript.word_texts(lo, hi)))
        )
    return segs


def segments_from_paragraphs(transcript: Transcript) -> list[Segment]:
    return segments_from_ranges(transcript, list(transcript.paragraphs))
