"""View projections: one effective script rendered three ways.

All views share stable word ids (the transcript word index) so the client
can keep its scroll anchor when switching views.
"""

from __future__ import annotations

from ..alignment import EditScript
from ..edit_types import type_counts
from ..transcript import Transcript


def script_stats(script: EditScript) -> dict:
    original = script.original_word_count
    result = script.result_word_count
    return {
        "original_words": original,
        "result_words": result,
        "compression": 1.0 - result / original if original else 0.0,
        "ops": script.num_ops,
        "inserted_words": script.inserted_word_count,
        "percent_synthesized": (
            100.0 * script.inserted_word_count / result if result else 0.0
        ),
    }


def _op_lookup(script: EditScript) -> tuple[dict[int, int], dict[int, int]]:
    """(word index -> op index) for removed words; (point -> op index) for
    insertion anchors."""
    removed_by_word: dict[int, int] = {}
    insert_at_point: dict[int, int] = {}
    for op_index, op in enumerate(script.ops):
        lo, hi = op.original_range
        for w in range(lo, hi):
            removed_by_word[w] = op_index
        if op.inserted_words:
            insert_at_point[lo] = op_index
    return removed_by_word, insert_at_point


def _ops_payload(script: EditScript) -> list[dict]:
    return [
        {
            "index": i,
            "kind": op.kind,
            "range": list(op.original_range),
            "insert": list(op.inserted_words),
            "edit_type": op.edit_type,
        }
        for i, op in enumerate(script.ops)
    ]


def build_view(
    transcript: Transcript,
    script: EditScript,
    view: str,
    target: int,
    overrides: dict[int, float],
    version: int,
) -> dict:
    """Project the effective script into one of the three transcript views."""
    removed_by_word, insert_at_point = _op_lookup(script)
    tokens: list[dict] = []

    def emit_insert(point: int) -> None:
        op_index = insert_at_point.get(point)
        if op_index is None:
            return
        op = script.ops[op_index]
        entry = {
            "kind": "insert",
            "at": point,
            "words": list(op.inserted_words),
            "op": op_index,
            "edit_type": op.edit_type,
        }
        tokens.append(entry)

    for word in transcript.words:
        emit_insert(word.index)
        op_index = removed_by_word.get(word.index)
        cut = op_index is not None
        if view == "final":
            if cut:
                # collapse each removed run into one cut marker
                lo = script.ops[op_index].original_range[0]
                if word.index == lo:
                    tokens.append({"kind": "cut_marker", "op": op_index, "at": word.index})
                continue
            tokens.append({"kind": "word", "id": word.index, "text": word.text})
        elif view == "diff":
            entry = {"kind": "word", "id": word.index, "text": word.text, "cut": cut}
            if cut:
                entry["op"] = op_index
            tokens.append(entry)
        else:  # edit_types
            entry = {"kind": "word", "id": word.index, "text": word.text, "cut": cut}
            if cut:
                entry["op"] = op_index
                entry["edit_type"] = script.ops[op_index].edit_type
            tokens.append(entry)
    emit_insert(len(transcript.words))

    paragraph_ranges = [list(p) for p in transcript.paragraphs]
    return {
        "view": view,
        "target": target,
        "overrides": {str(k): int(v * 100) for k, v in sorted(overrides.items())},
        "version": version,
        "tokens": tokens,
        "ops": _ops_payload(script),
        "type_counts": type_counts(script),
        "stats": script_stats(script),
        "paragraphs": paragraph_ranges,
    }
