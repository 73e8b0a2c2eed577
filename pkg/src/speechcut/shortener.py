"""Pipeline orchestration: segment, generate candidates, score, select, merge.

Each segment is shortened at the compression target of the paragraph holding
its first word (per-paragraph overrides win over the global target). Winning
per-segment scripts are rebased into transcript coordinates and concatenated.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .alignment import (
    EditScript,
    align,
    apply_script,
    empty_script,
    group_edits,
    merge_scripts,
    offset_script,
)
from .gateway import Gateway, GatewayError
from .scoring import (
    DEFAULT_WEIGHTS,
    CandidateScore,
    Embedder,
    LexicalEmbedder,
    ScoringWeights,
    score_candidate,
    select_best,
)
from .transcript import (
    CompressionTarget,
    Segment,
    Transcript,
    normalize_token,
    segments_from_paragraphs,
    segments_from_ranges,
    tokenize_text,
)


class ShorteningError(RuntimeError):
    """Raised when no candidate could be produced for a segment."""


def normalize_segment_words(word_texts: list[str]) -> list[str]:
    """One normalized token per word; pure-punctuation words keep a lowercase
    placeholder so indices stay aligned with transcript words."""
    return [normalize_token(t) or t.lower() for t in word_texts]


def normalize_candidate_tokens(text: str) -> tuple[list[str], list[str]]:
    """(normalized, surface) token pairs; pure-punctuation tokens dropped."""
    norm: list[str] = []
    surface: list[str] = []
    for tok in tokenize_text(text):
        n = normalize_token(tok)
        if n:
            norm.append(n)
            surface.append(tok)
    return norm, surface


@dataclass(frozen=True)
class Candidate:
    """One shortened-text proposal for a segment, with its edit script."""

    segment_id: int
    candidate_index: int
    text: str
    tokens: tuple[str, ...]  # normalized
    script: EditScript
    score: CandidateScore | None = None

    def to_document(self) -> dict:
        return {
            "segment_id": self.segment_id,
            "candidate_index": self.candidate_index,
            "text": self.text,
            "script": self.script.to_document(),
            "score": self.score.to_document() if self.score else None,
        }


@dataclass
class SegmentShortening:
    """Winner plus every scored candidate for one segment."""

    segment: Segment
    tau: float
    winner: Candidate
    candidates: list[Candidate] = field(default_factory=list)
    error: str | None = None


@dataclass
class ShortenResult:
    """Transcript-level outcome: per-segment winners and the merged script."""

    per_segment: list[SegmentShortening]
    merged_script: EditScript
    targets: list[float]  # effective tau per paragraph
    compression: float
    warnings: list[str] = field(default_factory=list)

    @property
    def stats(self) -> dict:
        return {
            "compression": self.compression,
            "ops": self.merged_script.num_ops,
            "inserted_words": self.merged_script.inserted_word_count,
            "original_words": self.merged_script.original_word_count,
            "result_words": self.merged_script.result_word_count,
        }

    def to_document(self) -> dict:
        return {
            "targets": self.targets,
            "segments": [
                {
                    "id": s.segment.id,
                    "word_range": list(s.segment.word_range),
                    "tau": s.tau,
                    "error": s.error,
                    "winner": s.winner.to_document(),
                }
                for s in self.per_segment
            ],
            "merged_script": self.merged_script.to_document(),
            "stats": self.stats,
            "warnings": self.warnings,
        }


def identity_candidate(segment: Segment, word_texts: list[str]) -> Candidate:
    tokens = normalize_segment_words(word_texts)
    script = empty_script(len(tokens))
    return Candidate(
        segment_id=segment.id,
        candidate_index=-1,
        text=segment.text,
        tokens=tuple(tokens),
        script=script,
        score=CandidateScore(
            candidate_index=-1,
            e_comp=1.0,
            e_edits=1.0,
            e_len=1.0,
            e_cov=1.0,
            total=1.0,
            num_ops=0,
            result_word_count=len(tokens),
        ),
    )


def build_candidate(
    segment: Segment,
    segment_tokens: list[str],
    text: str,
    index: int,
) -> Candidate:
    cand_norm, cand_surface = normalize_candidate_tokens(text)
    script = group_edits(align(segment_tokens, cand_norm, insert_tokens=cand_surface))
    return Candidate(
        segment_id=segment.id,
        candidate_index=index,
        text=text,
        tokens=tuple(cand_norm),
        script=script,
    )


def shorten_segment(
    segment: Segment,
    word_texts: list[str],
    tau: float,
    gateway: Gateway,
    n: int = 25,
    weights: ScoringWeights = DEFAULT_WEIGHTS,
    embedder: Embedder | None = None,
) -> SegmentShortening:
    """Generate, score, and select; tau = 0 short-circuits to identity."""
    CompressionTarget(tau)  # validates the enumerated set
    embedder = embedder or LexicalEmbedder()
    identity = identity_candidate(segment, word_texts)
    if tau == 0.0:
        return SegmentShortening(segment=segment, tau=tau, winner=identity)

    segment_tokens = list(identity.tokens)
    target_words = round((1.0 - tau) * len(word_texts))
    try:
        texts = gateway.request_candidates(segment.text, target_words, n)
    except GatewayError as exc:
        return SegmentShortening(
            segment=segment,
            tau=tau,
            winner=identity,
            error=f"candidate generation failed: {exc}",
        )

    candidates: list[Candidate] = []
    for j, text in enumerate(texts):
        cand = build_candidate(segment, segment_tokens, text, j)
        score = score_candidate(cand, segment, tau, weights, embedder)
        candidates.append(
            Candidate(
                segment_id=cand.segment_id,
                candidate_index=j,
                text=cand.text,
                tokens=cand.tokens,
                script=cand.script,
                score=score,
            )
        )

    # The unedited segment competes too (index -1): if no candidate scores
    # above doing nothing, the segment stays untouched.
    identity = Candidate(
        segment_id=identity.segment_id,
        candidate_index=-1,
        text=identity.text,
        tokens=identity.tokens,
        script=identity.script,
        score=score_candidate(identity, segment, tau, weights, embedder),
    )
    pool = {c.candidate_index: c for c in [*candidates, identity]}
    best_index = select_best([c.score for c in pool.values()])
    winner = pool[best_index]
    return SegmentShortening(
        segment=segment, tau=tau, winner=winner, candidates=candidates
    )


def resolve_segments(
    transcript: Transcript, gateway: Gateway | None
) -> tuple[list[Segment], list[str]]:
    """Ask the gateway for segments; fall back to paragraphs on failure."""
    warnings: list[str] = []
    if gateway is None:
        return segments_from_paragraphs(transcript), warnings
    text = "\n\n".join(
        transcript.paragraph_text(p) for p in range(len(transcript.paragraphs))
    )
    try:
        outcome = gateway.request_segmentation(text)
    except (GatewayError, ValueError) as exc:
        warnings.append(f"segmentation failed, using paragraphs: {exc}")
        return segments_from_paragraphs(transcript), warnings
    if outcome.repaired:
        warnings.extend(outcome.warnings)

    ranges: list[tuple[int, int]] = []
    cursor = 0
    for seg_text in outcome.texts:
        count = len(tokenize_text(seg_text))
        ranges.append((cursor, cursor + count))
        cursor += count
    if cursor != len(transcript.words):
        warnings.append("segmentation does not cover the transcript, using paragraphs")
        return segments_from_paragraphs(transcript), warnings
    return segments_from_ranges(transcript, ranges), warnings


def effective_tau(
    transcript: Transcript,
    segment: Segment,
    global_tau: float,
    overrides: dict[int, float],
) -> float:
    paragraph = transcript.paragraph_of_word(segment.word_range[0])
    return overrides.get(paragraph, global_tau)


def shorten_transcript(
    transcript: Transcript,
    global_tau: float,
    overrides: dict[int, float] | None = None,
    gateway: Gateway | None = None,
    n: int = 25,
    weights: ScoringWeights = DEFAULT_WEIGHTS,
    embedder: Embedder | None = None,
    segments: list[Segment] | None = None,
    max_workers: int = 4,
) -> ShortenResult:
    """Shorten every segment at its paragraph's target and merge the winners."""
    CompressionTarget(global_tau)
    overrides = dict(overrides or {})
    for p, tau in overrides.items():
        if not (0 <= p < len(transcript.paragraphs)):
            raise ValueError(f"override references unknown paragraph {p}")
        CompressionTarget(tau)

    gateway = gateway or Gateway()
    embedder = embedder or LexicalEmbedder()
    warnings: list[str] = []
    if segments is None:
        segments, seg_warnings = resolve_segments(transcript, gateway)
        warnings.extend(seg_warnings)

    taus = [effective_tau(transcript, s, global_tau, overrides) for s in segments]

    def run(seg: Segment, tau: float) -> SegmentShortening:
        words = transcript.word_texts(*seg.word_range)
        return shorten_segment(seg, words, tau, gateway, n, weights, embedder)

    if max_workers > 1 and len(segments) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            shortenings = list(pool.map(run, segments, taus))
    else:
        shortenings = [run(s, t) for s, t in zip(segments, taus)]

    for s in shortenings:
        if s.error:
            warnings.append(f"segment {s.segment.id}: {s.error}")

    total_words = len(transcript.words)
    offset_scripts = [
        offset_script(s.winner.script, s.segment.word_range[0], total_words)
        for s in shortenings
    ]
    merged = merge_scripts(offset_scripts, total_words)
    compression = (
        1.0 - merged.result_word_count / total_words if total_words else 0.0
    )

    targets = [overrides.get(p, global_tau) for p in range(len(transcript.paragraphs))]
    return ShortenResult(
        per_segment=shortenings,
        merged_script=merged,
        targets=targets,
        compression=compression,
        warnings=warnings,
    )


def merged_result_tokens(result: ShortenResult, transcript: Transcript) -> list[str]:
    """Apply the merged script to the transcript's normalized tokens."""
    tokens = normalize_segment_words([w.text for w in transcript.words])
    return apply_script(result.merged_script, tokens)
