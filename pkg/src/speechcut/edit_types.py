"""Edit-type classification: five labels ordered by risk.

The gateway's model-backed classifier is preferred; the rule-based fallback
here is total and deterministic, so every edit op always receives a label.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alignment import EditOp, EditScript
from .transcript import normalize_token, normalize_tokens

FILLER_WORD_REMOVAL = "Filler Word Removal"
REPETITION_REMOVAL = "Repetition Removal"
EMPHASIS_REMOVAL = "Emphasis Removal"
CLARIFICATION = "Clarification"
INFORMATION_REMOVAL = "Information Removal"

# Ordered least to most risky.
EDIT_TYPE_LABELS = (
    FILLER_WORD_REMOVAL,
    REPETITION_REMOVAL,
    EMPHASIS_REMOVAL,
    CLARIFICATION,
    INFORMATION_REMOVAL,
)

RISK_RANK = {label: rank for rank, label in enumerate(EDIT_TYPE_LABELS, start=1)}

# Unigrams/bigrams treated as verbal pauses. Configuration defaults; matching
# happens on normalized tokens.
FILLER_TERMS = frozenset(
    {
        "um",
        "uh",
        "like",
        "you know",
        "basically",
        "sort of",
        "kind of",
        "i mean",
        "well",
        "so",
        "right",
        "okay",
    }
)

EMPHASIS_TERMS = frozenset(
    {"really", "very", "just", "totally", "definitely", "completely"}
)


class ClassificationError(ValueError):
    """Raised when a provider returns a label outside the closed set."""


@dataclass(frozen=True)
class EditType:
    """A classification label plus its risk rank (1 = least risky)."""

    value: str

    def __post_init__(self) -> None:
        if self.value not in RISK_RANK:
            raise ClassificationError(f"unknown edit type {self.value!r}")

    @property
    def risk_rank(self) -> int:
        return RISK_RANK[self.value]


def _covered_by_terms(tokens: list[str], terms: frozenset[str]) -> bool:
    """True when the token run is fully tiled by term unigrams/bigrams."""
    if not tokens:
        return False
    i = 0
    while i < len(tokens):
        if i + 1 < len(tokens) and f"{tokens[i]} {tokens[i + 1]}" in terms:
            i += 2
        elif tokens[i] in terms:
            i += 1
        else:
            return False
    return True


def _duplicates_adjacent_ngram(
    deleted: list[str], before_context: list[str], after_context: list[str]
) -> bool:
    """Deleted run duplicates an n-gram (n <= 3) surviving right next to it."""
    n = len(deleted)
    if not 1 <= n <= 3:
        return False
    return deleted == before_context[-n:] or deleted == after_context[:n]


def classify_tokens_rule_based(
    deleted_tokens: list[str],
    inserted_tokens: list[str],
    context_before: str = "",
    context_after: str = "",
) -> str:
    """Deterministic fallback classification from raw token lists.

    Rules, in risk order: fully-filler deletions, adjacent-duplicate
    deletions, fully-emphasis deletions, anything inserting words, then
    information removal.
    """
    deleted = normalize_tokens(deleted_tokens)
    before = normalize_tokens(context_before.split())
    after = normalize_tokens(context_after.split())

    if not inserted_tokens and deleted:
        if _covered_by_terms(deleted, FILLER_TERMS):
            return FILLER_WORD_REMOVAL
        if _duplicates_adjacent_ngram(deleted, before, after):
            return REPETITION_REMOVAL
        if _covered_by_terms(deleted, EMPHASIS_TERMS):
            return EMPHASIS_REMOVAL
    if inserted_tokens:
        return CLARIFICATION
    return INFORMATION_REMOVAL


def classify_edit(
    op: EditOp,
    deleted_words: list[str],
    context_before: str,
    context_after: str,
    gateway=None,
) -> str:
    """Classify one op, preferring the gateway, falling back to rules.

    deleted_words are the surface forms the op removes (the op itself only
    stores index ranges).
    """
    if gateway is not None:
        before_text = " ".join([context_before, *deleted_words, context_after]).strip()
        after_text = " ".join(
            [context_before, *op.inserted_words, context_after]
        ).strip()
        if before_text != after_text:
            try:
                return gateway.request_edit_type(before_text, after_text)
            except Exception:
                pass
    return classify_tokens_rule_based(
        deleted_words, list(op.inserted_words), context_before, context_after
    )


def classify_script(
    script: EditScript,
    original_words: list[str],
    gateway=None,
    context_window: int = 5,
) -> EditScript:
    """Attach an edit type to every op of a script over the given words."""
    labeled = []
    for op in script.ops:
        lo, hi = op.original_range
        before = " ".join(original_words[max(0, lo - context_window) : lo])
        after = " ".join(original_words[hi : hi + context_window])
        label = classify_edit(op, original_words[lo:hi], before, after, gateway)
        labeled.append(op.with_edit_type(label))
    return EditScript(
        ops=tuple(labeled),
        original_word_count=script.original_word_count,
        result_word_count=script.result_word_count,
    )


def type_counts(script: EditScript) -> dict[str, int]:
    """Per-label op counts for the count bar; all five labels always present."""
    counts = {label: 0 for label in EDIT_TYPE_LABELS}
    for op in script.ops:
        if op.edit_type in counts:
            counts[op.edit_type] += 1
    return counts


def validate_label(label: str) -> str:
    cleaned = label.strip().strip("'\"")
    for known in EDIT_TYPE_LABELS:
        if cleaned.lower() == known.lower():
            return known
    raise ClassificationError(f"unknown edit type {label!r}")


def is_filler_token(token: str) -> bool:
    return normalize_token(token) in FILLER_TERMS


def is_emphasis_token(token: str) -> bool:
    return normalize_token(token) in EMPHASIS_TERMS
