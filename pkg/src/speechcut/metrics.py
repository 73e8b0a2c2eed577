"""Evaluation measurements: compression deviation, synthesis share, coverage,
and disfluency counts.

Coherence errors and style preservation need human listening / a learned
style model; the report carries explicit placeholders for them instead of
numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alignment import EditScript
from .edit_types import FILLER_TERMS
from .scoring import Embedder, LexicalEmbedder, e_cov
from .transcript import split_sentences


@dataclass(frozen=True)
class MetricReport:
    """One evaluated (original, shortened) pair."""

    compression_achieved: float  # fraction of words removed
    compression_deviation: float  # |achieved - tau| in percentage points
    percent_synthesized: float
    coverage: float
    filler_count: int
    repetition_count: int

    @property
    def disfluency_count(self) -> int:
        return self.filler_count + self.repetition_count

    def to_document(self) -> dict:
        return {
            "compression_achieved": self.compression_achieved,
            "compression_deviation": self.compression_deviation,
            "percent_synthesized": self.percent_synthesized,
            "coverage": self.coverage,
            "filler_count": self.filler_count,
            "repetition_count": self.repetition_count,
            "disfluency_count": self.disfluency_count,
            "coherence_errors": "manual",  # requires listening; not computed
            "style_preservation": "not computed",  # learned embedder out of scope
        }


def compression_metrics(
    original_word_count: int, result_word_count: int, tau: float
) -> tuple[float, float]:
    """(achieved removal fraction, deviation from tau in percentage points)."""
    if original_word_count <= 0:
        raise ValueError("original_word_count must be positive")
    achieved = 1.0 - result_word_count / original_word_count
    deviation = abs(achieved - tau) * 100.0
    return achieved, deviation


def percent_synthesized(script: EditScript) -> float:
    """Inserted words as a percentage of the output word count."""
    if script.result_word_count <= 0:
        return 0.0
    return 100.0 * script.inserted_word_count / script.result_word_count


def coverage_metric(
    original_text: str, shortened_text: str, embedder: Embedder | None = None
) -> float:
    """Sentence coverage at whole-document granularity (same math as e_cov)."""
    embedder = embedder or LexicalEmbedder()
    return e_cov(
        split_sentences(original_text), split_sentences(shortened_text), embedder
    )


def disfluency_count(tokens: list[str]) -> tuple[int, int]:
    """(filler_count, repetition_count) over normalized tokens.

    Fillers match list entries non-overlapping, bigrams before unigrams.
    Repetitions count immediately repeated n-grams (n <= 3), longest n first,
    each repeated copy once.
    """
    filler = 0
    i = 0
    while i < len(tokens):
        if i + 1 < len(tokens) and f"{tokens[i]} {tokens[i + 1]}" in FILLER_TERMS:
            filler += 1
            i += 2
        elif tokens[i] in FILLER_TERMS:
            filler += 1
            i += 1
        else:
            i += 1

    repetition = 0
    i = 0
    while i < len(tokens):
        matched = False
        for n in (3, 2, 1):
            if i + 2 * n <= len(tokens) and tokens[i : i + n] == tokens[i + n : i + 2 * n]:
                repetition += 1
                i += n  # the repeated copy becomes the next comparison base
                matched = True
                break
        if not matched:
            i += 1
    return filler, repetition


def evaluate_pair(
    original_tokens: list[str],
    script: EditScript,
    original_text: str,
    shortened_text: str,
    tau: float,
    embedder: Embedder | None = None,
) -> MetricReport:
    """Full metric report for one shortened transcript."""
    achieved, deviation = compression_metrics(
        script.original_word_count, script.result_word_count, tau
    )
    from .transcript import normalize_tokens, tokenize_text

    shortened_tokens = normalize_tokens(tokenize_text(shortened_text))
    filler, repetition = disfluency_count(shortened_tokens)
    return MetricReport(
        compression_achieved=achieved,
        compression_deviation=deviation,
        percent_synthesized=percent_synthesized(script),
        coverage=coverage_metric(original_text, shortened_text, embedder),
        filler_count=filler,
        repetition_count=repetition,
    )


def aggregate(values: list[float]) -> dict:
    """Mean, population sigma, and range for a metric column."""
    if not values:
        return {"mean": 0.0, "sigma": 0.0, "min": 0.0, "max": 0.0}
    mean = sum(values) / len(values)
    var = sum((v - mean) ** 2 for v in values) / len(values)
    return {"mean": mean, "sigma": var**0.5, "min": min(values), "max": max(values)}
