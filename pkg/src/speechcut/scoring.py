"""Candidate evaluation: the four component scores and best-candidate selection.

A candidate's total score is the weighted sum of compression accuracy, edit
count, insertion length, and sentence coverage. Components may go negative
(long insertions, many edits) and are deliberately not clamped; ranking still
works.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Protocol

from .transcript import normalize_tokens, split_sentences, tokenize_text


class ScoringError(RuntimeError):
    """Raised when a candidate cannot be scored (embedder failure)."""


class SelectionError(ValueError):
    """Raised when selection is asked to pick from an empty candidate list."""


@dataclass(frozen=True)
class ScoringWeights:
    """Weights for the four score components."""

    lambda1: float = 0.4  # compression accuracy
    lambda2: float = 0.15  # edit count
    lambda3: float = 0.1  # insertion length
    lambda4: float = 0.35  # coverage

    def __post_init__(self) -> None:
        for name in ("lambda1", "lambda2", "lambda3", "lambda4"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must be in [0, 1], got {v}")


DEFAULT_WEIGHTS = ScoringWeights()


@dataclass(frozen=True)
class CandidateScore:
    """Component and total scores for one candidate, plus tie-break keys."""

    candidate_index: int
    e_comp: float
    e_edits: float
    e_len: float
    e_cov: float
    total: float
    num_ops: int
    result_word_count: int

    def to_document(self) -> dict:
        return {
            "candidate_index": self.candidate_index,
            "e_comp": self.e_comp,
            "e_edits": self.e_edits,
            "e_len": self.e_len,
            "e_cov": self.e_cov,
            "total": self.total,
            "num_ops": self.num_ops,
            "result_word_count": self.result_word_count,
        }


class Embedder(Protocol):
    """Sentence embedding backend used by coverage scoring."""

    name: str

    def embed(self, sentence: str): ...


class LexicalEmbedder:
    """Deterministic bag-of-words embedder.

    Each normalized token contributes its term frequency scaled by its
    character length, so longer (more contentful) words carry more weight
    than short function words. Embeddings are sparse token->weight maps.
    """

    name = "lexical"

    def embed(self, sentence: str) -> dict[str, float]:
        counts = Counter(normalize_tokens(tokenize_text(sentence)))
        return {tok: n * float(len(tok)) for tok, n in counts.items()}


def cosine(u, v) -> float:
    """Cosine similarity for sparse dicts or dense sequences; 0 for zero vectors."""
    if isinstance(u, dict):
        dot = sum(w * v.get(t, 0.0) for t, w in u.items())
        nu = math.sqrt(sum(w * w for w in u.values()))
        nv = math.sqrt(sum(w * w for w in v.values()))
    else:
        dot = sum(a * b for a, b in zip(u, v))
        nu = math.sqrt(sum(a * a for a in u))
        nv = math.sqrt(sum(b * b for b in v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def e_comp(candidate_len: int, original_len: int, tau: float) -> float:
    """Closeness of the achieved removal fraction to the target fraction."""
    if original_len <= 0:
        raise ValueError("original_len must be positive")
    removed_fraction = 1.0 - candidate_len / original_len
    return 1.0 - abs(removed_fraction - tau)


def e_edits(num_ops: int, original_len: int) -> float:
    """Edit-count score, normalized by the worst case of every second word edited."""
    if original_len <= 0:
        raise ValueError("original_len must be positive")
    # floor(len/2), guarded so 1-word segments still score (any edit there
    # lands at 0 rather than dividing by zero).
    max_edits = max(1, original_len // 2)
    return 1.0 - num_ops / max_edits


def e_len(insertion_lengths: list[int]) -> float:
    """Mean-insertion-length score; no insertions is the best case (1.0)."""
    if not insertion_lengths:
        return 1.0
    return 1.0 - sum(insertion_lengths) / len(insertion_lengths)


def e_cov(
    original_sentences: list[str],
    candidate_sentences: list[str],
    embedder: Embedder,
) -> float:
    """Mean over original sentences of the best cosine match in the candidate."""
    if not original_sentences:
        raise ValueError("original_sentences must be non-empty")
    if not candidate_sentences:
        return 0.0
    try:
        cand_vecs = [embedder.embed(c) for c in candidate_sentences]
        total = 0.0
        for s in original_sentences:
            sv = embedder.embed(s)
            total += max(cosine(sv, cv) for cv in cand_vecs)
    except Exception as exc:
        raise ScoringError(f"embedder {embedder.name!r} failed: {exc}") from exc
    return total / len(original_sentences)


def combine(
    components: tuple[float, float, float, float],
    weights: ScoringWeights = DEFAULT_WEIGHTS,
) -> float:
    c1, c2, c3, c4 = components
    return (
        weights.lambda1 * c1
        + weights.lambda2 * c2
        + weights.lambda3 * c3
        + weights.lambda4 * c4
    )


def score_candidate(
    candidate,
    segment,
    tau: float,
    weights: ScoringWeights = DEFAULT_WEIGHTS,
    embedder: Embedder | None = None,
) -> CandidateScore:
    """Score one candidate against its segment.

    candidate needs .text, .tokens, .script, .candidate_index; segment needs
    .text. The candidate's edit script must already be computed.
    """
    embedder = embedder or LexicalEmbedder()
    original_len = len(normalize_tokens(tokenize_text(segment.text)))
    comp = e_comp(len(candidate.tokens), original_len, tau)
    edits = e_edits(candidate.script.num_ops, original_len)
    ins = e_len(candidate.script.insertion_lengths())
    cov = e_cov(split_sentences(segment.text), split_sentences(candidate.text), embedder)
    total = combine((comp, edits, ins, cov), weights)
    return CandidateScore(
        candidate_index=candidate.candidate_index,
        e_comp=comp,
        e_edits=edits,
        e_len=ins,
        e_cov=cov,
        total=total,
        num_ops=candidate.script.num_ops,
        result_word_count=candidate.script.result_word_count,
    )


def select_best(scores: list[CandidateScore]) -> int:
    """Argmax of total; ties break to fewer ops, fewer words, lower index."""
    if not scores:
        raise SelectionError("no candidate scores to select from")
    best = min(
        scores,
        key=lambda s: (-s.total, s.num_ops, s.result_word_count, s.candidate_index),
    )
    return best.candidate_index
