"""Uniform access to the language-model capabilities the pipeline needs.

The Gateway validates and repairs provider output; providers (remote HTTP or
the deterministic offline mock) implement the raw calls. A semaphore bounds
in-flight requests per gateway instance.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field

from ..transcript import tokenize_text


class GatewayError(RuntimeError):
    pass


class TransportError(GatewayError):
    """Provider unreachable or timed out after bounded retries."""


class SegmentationError(GatewayError):
    """Provider segmentation could not be repaired into a partition."""


class CandidateError(GatewayError):
    """Candidate generation failed for a segment."""


class InformationError(GatewayError):
    """Information extraction failed for a segment."""


class ImportanceError(GatewayError):
    """Importance rating response unusable (length mismatch)."""


@dataclass
class GatewayConfig:
    """Provider selection and transport limits."""

    provider: str = "mock"
    base_url: str | None = None
    api_key_env: str = "SPEECHCUT_API_KEY"
    model_id: str = "default"
    max_parallel_requests: int = 8
    request_timeout: float = 30.0  # seconds
    seed: int = 0  # mock only
    temperature: float = 1.0
    cache_dir: str | None = None

    def __post_init__(self) -> None:
        if self.provider not in ("remote", "mock"):
            raise ValueError(f"provider must be 'remote' or 'mock', got {self.provider!r}")
        if self.max_parallel_requests < 1:
            raise ValueError("max_parallel_requests must be >= 1")
        if self.provider == "remote":
            if not self.base_url:
                raise ValueError("remote provider requires base_url")
            if not os.environ.get(self.api_key_env):
                raise ValueError(
                    f"remote provider requires API key in ${self.api_key_env}"
                )


@dataclass
class SegmentationOutcome:
    """Segment texts plus whether the gateway had to repair the response."""

    texts: list[str]
    repaired: bool = False
    warnings: list[str] = field(default_factory=list)


@dataclass
class InformationBitRaw:
    """One extracted information bit before outline post-processing."""

    title: str
    alignment_phrase: str
    raw_importance: int


def _squash(text: str) -> str:
    return " ".join(text.split()).lower()


class Gateway:
    """Validating front door for the five model-backed operations."""

    def __init__(self, config: GatewayConfig | None = None, provider=None):
        self.config = config or GatewayConfig()
        if provider is not None:
            self.provider = provider
        elif self.config.provider == "mock":
            from .mock import MockProvider

            self.provider = MockProvider(seed=self.config.seed)
        else:
            from .remote import RemoteProvider

            self.provider = RemoteProvider(self.config)
        self._slots = threading.Semaphore(self.config.max_parallel_requests)

    def _call(self, fn, *args):
        with self._slots:
            return fn(*args)

    # -- segmentation ------------------------------------------------------

    def request_segmentation(self, transcript_text: str) -> SegmentationOutcome:
        """Segment text; returned texts always partition the input tokens."""
        if not transcript_text.strip():
            raise ValueError("transcript text is empty")
        raw_segments = self._call(self.provider.segment, transcript_text)
        source_tokens = tokenize_text(transcript_text)
        provider_tokens = [tokenize_text(s) for s in raw_segments]

        if [t for seg in provider_tokens for t in seg] == source_tokens:
            texts = [" ".join(seg) for seg in provider_tokens if seg]
            return SegmentationOutcome(texts=texts)
        return self._repair_segmentation(source_tokens, provider_tokens)

    def _repair_segmentation(
        self, source_tokens: list[str], provider_tokens: list[list[str]]
    ) -> SegmentationOutcome:
        """Greedy longest-prefix repair of a non-partition response."""
        boundaries: list[int] = []
        cursor = 0
        for seg in provider_tokens:
            matched = 0
            while (
                matched < len(seg)
                and cursor + matched < len(source_tokens)
                and seg[matched] == source_tokens[cursor + matched]
            ):
                matched += 1
            if matched == 0 and seg:
                continue  # segment contributes nothing usable
            cursor += matched
            boundaries.append(cursor)
        if not boundaries:
            raise SegmentationError("provider response shares no prefix with the input")
        if boundaries[-1] != len(source_tokens):
            boundaries.append(len(source_tokens))
        texts = []
        lo = 0
        for hi in boundaries:
            if hi > lo:
                texts.append(" ".join(source_tokens[lo:hi]))
                lo = hi
        return SegmentationOutcome(
            texts=texts,
            repaired=True,
            warnings=["segmentation response repaired by greedy prefix matching"],
        )

    # -- candidate generation ----------------------------------------------

    def request_candidates(
        self, segment_text: str, target_length_words: int, n: int
    ) -> list[str]:
        """Exactly n candidate texts; short responses are topped up."""
        if target_length_words < 1 and tokenize_text(segment_text):
            target_length_words = 1
        if n < 1:
            raise ValueError("n must be >= 1")
        texts = list(
            self._call(self.provider.candidates, segment_text, target_length_words, n)
        )
        attempts = 0
        while len(texts) < n and attempts < 3:
            texts.extend(
                self._call(
                    self.provider.candidates,
                    segment_text,
                    target_length_words,
                    n - len(texts),
                )
            )
            attempts += 1
        if len(texts) < n:
            raise CandidateError(
                f"provider returned {len(texts)} of {n} requested candidates"
            )
        return texts[:n]

    # -- edit-type classification --------------------------------------------

    def request_edit_type(self, before_text: str, after_text: str) -> str:
        from ..edit_types import validate_label

        if before_text == after_text:
            raise ValueError("before and after texts are identical")
        label = self._call(self.provider.edit_type, before_text, after_text)
        return validate_label(label)

    # -- information extraction ----------------------------------------------

    def request_information(self, segment_text: str) -> list[InformationBitRaw]:
        """Bits whose alignment phrase does not occur in the segment are dropped."""
        if not segment_text.strip():
            raise ValueError("segment text is empty")
        raw = self._call(self.provider.information, segment_text)
        squashed_segment = _squash(segment_text)
        bits = []
        for title, phrase, importance in raw:
            if _squash(phrase) and _squash(phrase) in squashed_segment:
                bits.append(
                    InformationBitRaw(
                        title=title,
                        alignment_phrase=phrase,
                        raw_importance=max(1, min(10, int(importance))),
                    )
                )
        return bits

    # -- importance rating -----------------------------------------------------

    def request_importances(
        self, bit_titles: list[str], purpose: str, segment_text: str
    ) -> list[int]:
        if not bit_titles:
            raise ValueError("bit_titles must be non-empty")
        scores = self._call(
            self.provider.importances, bit_titles, purpose, segment_text
        )
        if len(scores) != len(bit_titles):
            raise ImportanceError(
                f"expected {len(bit_titles)} scores, got {len(scores)}"
            )
        return [max(1, min(10, int(s))) for s in scores]
