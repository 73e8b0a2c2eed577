"""Outline data: information bits, purpose-conditioned importance, retention.

One group per segment. Raw importances come from extraction when no purpose
is set and from the purpose-conditioned rater otherwise; either way raw
scores cluster high, so they are linearly redistributed onto [1, 10] across
the whole outline before display.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gateway import Gateway, GatewayError
from .transcript import Segment, Transcript, normalize_token, normalize_tokens

# Standard English function words; keywords are what remains of a phrase
# after removing these.
STOPWORDS = frozenset(
    """a an the and or but if then else for nor so yet of in on at to from by
    with about as into through during before after above below up down out off
    over under again further once here there all any both each few more most
    other some such no not only own same than too very s t can will just don
    should now i me my we our you your he him his she her it its they them
    their what which who whom this that these those am is are was were be been
    being have has had having do does did doing would could ought i'm you're
    he's she's it's we're they're i've you've we've they've isn't aren't
    wasn't weren't hasn't haven't hadn't doesn't don't didn't won't wouldn't
    shan't shouldn't can't cannot couldn't mustn't let's that's who's what's
    here's there's when's where's why's how's because why how when where um uh
    """.split()
)


@dataclass
class InformationBit:
    """An atomic fact anchored to its source phrase in a segment."""

    id: int
    segment_id: int
    title: str
    alignment_phrase: str
    raw_importance: int
    importance: float  # after redistribution, in [1, 10]
    keywords: tuple[str, ...]
    word_range: tuple[int, int]  # transcript word indices for scroll/highlight

    def to_document(self, retention: float | None = None) -> dict:
        doc = {
            "id": self.id,
            "segment_id": self.segment_id,
            "title": self.title,
            "alignment_phrase": self.alignment_phrase,
            "raw_importance": self.raw_importance,
            "importance": self.importance,
            "keywords": list(self.keywords),
            "word_range": list(self.word_range),
        }
        if retention is not None:
            doc["retention"] = retention
        return doc


@dataclass
class InformationGroup:
    """Per-segment group of bits with their mean importance."""

    segment_id: int
    summary: str
    bits: list[InformationBit] = field(default_factory=list)

    @property
    def importance(self) -> float:
        if not self.bits:
            return 0.0
        return sum(b.importance for b in self.bits) / len(self.bits)

    def to_document(self, retentions: dict[int, float] | None = None) -> dict:
        retentions = retentions or {}
        return {
            "segment_id": self.segment_id,
            "summary": self.summary,
            "importance": self.importance,
            "bits": [b.to_document(retentions.get(b.id)) for b in self.bits],
        }


@dataclass
class Outline:
    groups: list[InformationGroup]
    purpose: str = ""
    warnings: list[str] = field(default_factory=list)

    def all_bits(self) -> list[InformationBit]:
        return [b for g in self.groups for b in g.bits]

    def to_document(self, retentions: dict[int, float] | None = None) -> dict:
        return {
            "purpose": self.purpose,
            "groups": [g.to_document(retentions) for g in self.groups],
            "warnings": self.warnings,
        }


def rescale_importances(raw: list[float]) -> list[float]:
    """Linear min-max redistribution onto [1, 10].

    Constant input maps everything to 10: a rater that refused to
    differentiate should not hide content.
    """
    if not raw:
        return []
    lo, hi = min(raw), max(raw)
    if hi == lo:
        return [10.0 for _ in raw]
    return [1.0 + 9.0 * (x - lo) / (hi - lo) for x in raw]


def keywords_of(phrase: str) -> tuple[str, ...]:
    """Normalized content tokens of a phrase (stopwords removed), deduplicated."""
    seen: dict[str, None] = {}
    for tok in normalize_tokens(phrase.split()):
        if tok not in STOPWORDS:
            seen.setdefault(tok)
    return tuple(seen)


def keyword_retention(bit: InformationBit, final_tokens) -> float:
    """Percentage of the bit's keywords still present in the edited transcript.

    final_tokens is any container supporting membership over normalized
    tokens. Zero-keyword bits report 100 (nothing to lose).
    """
    if not bit.keywords:
        return 100.0
    token_set = set(final_tokens)
    present = sum(1 for k in bit.keywords if k in token_set)
    return 100.0 * present / len(bit.keywords)


def locate_phrase(
    transcript: Transcript, segment: Segment, phrase: str
) -> tuple[int, int]:
    """Word-index span of a phrase within its segment; whole segment if the
    token window cannot be matched."""
    phrase_tokens = [normalize_token(t) for t in phrase.split()]
    phrase_tokens = [t for t in phrase_tokens if t]
    lo, hi = segment.word_range
    words = [normalize_token(w.text) for w in transcript.words[lo:hi]]
    n = len(phrase_tokens)
    if n:
        for i in range(len(words) - n + 1):
            if words[i : i + n] == phrase_tokens:
                return (lo + i, lo + i + n)
    return (lo, hi)


def build_outline(
    transcript: Transcript,
    segments: list[Segment],
    gateway: Gateway,
    purpose: str = "",
) -> Outline:
    """Extract bits per segment, rate, redistribute, and group."""
    warnings: list[str] = []
    groups: list[InformationGroup] = []
    raw_scores: list[int] = []
    pending: list[tuple[InformationBit, int]] = []  # bit, index into raw_scores

    for segment in segments:
        group = InformationGroup(segment_id=segment.id, summary="")
        groups.append(group)
        try:
            raw_bits = gateway.request_information(segment.text)
        except (GatewayError, ValueError) as exc:
            warnings.append(f"segment {segment.id}: information extraction failed: {exc}")
            continue
        if not raw_bits:
            continue

        importances = [b.raw_importance for b in raw_bits]
        if purpose:
            try:
                importances = gateway.request_importances(
                    [b.title for b in raw_bits], purpose, segment.text
                )
            except GatewayError as exc:
                warnings.append(
                    f"segment {segment.id}: importance rating failed, keeping prior: {exc}"
                )

        for raw_bit, raw_score in zip(raw_bits, importances):
            bit = InformationBit(
                id=len(pending),
                segment_id=segment.id,
                title=raw_bit.title,
                alignment_phrase=raw_bit.alignment_phrase,
                raw_importance=raw_score,
                importance=float(raw_score),  # rescaled below
                keywords=keywords_of(raw_bit.alignment_phrase),
                word_range=locate_phrase(transcript, segment, raw_bit.alignment_phrase),
            )
            group.bits.append(bit)
            pending.append((bit, len(raw_scores)))
            raw_scores.append(raw_score)

    rescaled = rescale_importances([float(s) for s in raw_scores])
    for bit, score_index in pending:
        bit.importance = rescaled[score_index]

    for group in groups:
        if group.bits:
            top = max(group.bits, key=lambda b: (b.importance, -b.id))
            group.summary = top.title

    return Outline(groups=groups, purpose=purpose, warnings=warnings)


def outline_retentions(outline: Outline, final_tokens) -> dict[int, float]:
    """Per-bit keyword retention against the effective edited transcript."""
    token_set = set(final_tokens)
    return {b.id: keyword_retention(b, token_set) for b in outline.all_bits()}
