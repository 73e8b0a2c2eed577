"""Deterministic offline provider.

Every response is a pure function of (operation, inputs, seed): candidate
generation hashes its inputs into a private RNG stream, so reruns are
byte-identical and independent of call order. Candidates exercise deletions,
insertions, and replacements the way a real model would, including noisy
target adherence (single samples are unreliable; selection fixes that).
"""

from __future__ import annotations

import hashlib
import random

from ..edit_types import classify_tokens_rule_based
from ..transcript import split_sentences, tokenize_text
from ..alignment import align, group_edits
from ..transcript import normalize_token

# Connectives occasionally substituted for a deleted span (1 in 5 candidates).
CONNECTIVES = ("which", "and")

# How far a single sample may stray from the requested removal fraction.
TARGET_NOISE = 0.25


def _stream(*parts) -> random.Random:
    digest = hashlib.sha256("\x1f".join(str(p) for p in parts).encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


class MockProvider:
    """Offline stand-in for the remote model."""

    name = "mock"

    def __init__(self, seed: int = 0):
        self.seed = seed

    # -- segmentation: blank-line blocks, else the whole text ---------------

    def segment(self, text: str) -> list[str]:
        blocks = [b.strip() for b in text.split("\n\n") if b.strip()]
        return blocks if blocks else [text]

    # -- candidate generation ------------------------------------------------

    def candidates(self, segment_text: str, target_words: int, n: int) -> list[str]:
        return [
            self._one_candidate(segment_text, target_words, j) for j in range(n)
        ]

    def _one_candidate(self, segment_text: str, target_words: int, j: int) -> str:
        tokens = tokenize_text(segment_text)
        if target_words >= len(tokens):
            return segment_text

        rng = _stream("candidate", self.seed, segment_text, target_words, j)

        # Fillers go first, unconditionally (matching unigrams and bigrams).
        removed = self._filler_indices(tokens)

        # Aim for the requested removal fraction, plus per-sample noise: raw
        # model output is unreliable at hitting targets.
        requested_removal = 1.0 - target_words / len(tokens)
        noisy = requested_removal + rng.uniform(-TARGET_NOISE, TARGET_NOISE)
        noisy = min(0.9, max(0.0, noisy))
        quota = round(noisy * len(tokens))

        kept = [i for i in range(len(tokens)) if i not in removed]
        attempts = 0
        while len(removed) < quota and len(kept) > 1 and attempts < 200:
            attempts += 1
            start_pos = rng.randrange(len(kept))
            run_len = rng.randint(1, min(4, len(kept) - 1, max(1, quota - len(removed))))
            run = kept[start_pos : start_pos + run_len]
            # Runs must be contiguous in the original to read like one cut.
            if run[-1] - run[0] != len(run) - 1:
                run = run[:1]
            for idx in run:
                removed.add(idx)
            kept = [i for i in range(len(tokens)) if i not in removed]

        inserts: dict[int, str] = {}
        if j % 5 == 4 and removed:
            # Substitute a connective for one deleted run to exercise
            # insertions/replacements.
            runs = self._runs(sorted(removed))
            run = runs[rng.randrange(len(runs))]
            inserts[run[0]] = CONNECTIVES[rng.randrange(len(CONNECTIVES))]

        out: list[str] = []
        for i, tok in enumerate(tokens):
            if i in inserts:
                out.append(inserts[i])
            if i not in removed:
                out.append(tok)
        return " ".join(out)

    @staticmethod
    def _filler_indices(tokens: list[str]) -> set[int]:
        from ..edit_types import FILLER_TERMS

        removed: set[int] = set()
        norm = [normalize_token(t) for t in tokens]
        i = 0
        while i < len(tokens):
            if i + 1 < len(tokens) and f"{norm[i]} {norm[i + 1]}" in FILLER_TERMS:
                removed.update((i, i + 1))
                i += 2
            elif norm[i] in FILLER_TERMS:
                removed.add(i)
                i += 1
            else:
                i += 1
        return removed

    @staticmethod
    def _runs(indices: list[int]) -> list[list[int]]:
        runs: list[list[int]] = []
        for idx in indices:
            if runs and idx == runs[-1][-1] + 1:
                runs[-1].append(idx)
            else:
                runs.append([idx])
        return runs

    # -- edit-type classification ---------------------------------------------

    def edit_type(self, before_text: str, after_text: str) -> str:
        before = tokenize_text(before_text)
        after = tokenize_text(after_text)
        before_norm = [normalize_token(t) or t.lower() for t in before]
        after_norm = [normalize_token(t) or t.lower() for t in after]
        script = group_edits(align(before_norm, after_norm, insert_tokens=after))
        if not script.ops:
            return "Information Removal"
        # Classify the most substantial op (widest range) of the diff.
        op = max(script.ops, key=lambda o: (o.deleted_count, len(o.inserted_words)))
        lo, hi = op.original_range
        return classify_tokens_rule_based(
            before[lo:hi],
            list(op.inserted_words),
            " ".join(before[max(0, lo - 3) : lo]),
            " ".join(before[hi : hi + 3]),
        )

    # -- information extraction -------------------------------------------------

    def information(self, text: str) -> list[tuple[str, str, int]]:
        bits = []
        for sentence in split_sentences(text):
            title = sentence.rstrip(".!?")
            bits.append((title, sentence, 5))
        return bits

    # -- importance rating ---------------------------------------------------------

    def importances(self, titles: list[str], purpose: str, text: str) -> list[int]:
        return [
            1 + _stream("importance", self.seed, t, purpose).randrange(10)
            for t in titles
        ]
