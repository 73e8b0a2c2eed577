"""Word-level alignment and edit scripts.

align() runs Needleman-Wunsch between original and candidate token sequences
(match +1, mismatch -1, gap -1; deterministic traceback). Raw keep/delete/
insert instructions are grouped into edit operations: maximal runs of
consecutive non-keep instructions, each run one deletion, insertion, or
replacement. The compiled kernel is preferred; a pure-Python kernel is the
import-time fallback.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import _nw_py

try:  # compiled kernel is optional
    from . import _nw_cy as _kernel

    KERNEL_NAME = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = _nw_py
    KERNEL_NAME = "python"

MOVE_DIAG = _nw_py.MOVE_DIAG
MOVE_UP = _nw_py.MOVE_UP
MOVE_LEFT = _nw_py.MOVE_LEFT

KEEP = "keep"
DELETE = "delete"
INSERT = "insert"

DELETION = "deletion"
INSERTION = "insertion"
REPLACEMENT = "replacement"


class ScriptError(ValueError):
    """Raised when an edit script cannot be applied to a token sequence."""


@dataclass(frozen=True)
class EditInstruction:
    """One raw alignment step against the original sequence.

    For keep/delete, original_index is the consumed word index. For insert,
    original_index is the insertion point: the new token goes before that
    original position.
    """

    kind: str
    original_index: int
    inserted_token: str | None = None


@dataclass(frozen=True)
class EditOp:
    """A grouped edit: one deletion, insertion, or replacement chunk."""

    kind: str
    original_range: tuple[int, int]  # half-open; empty for pure insertion
    inserted_words: tuple[str, ...] = ()
    edit_type: str | None = None

    @property
    def deleted_count(self) -> int:
        return self.original_range[1] - self.original_range[0]

    def with_edit_type(self, label: str) -> "EditOp":
        return replace(self, edit_type=label)


@dataclass(frozen=True)
class EditScript:
    """Ordered edit operations transforming original tokens to result tokens."""

    ops: tuple[EditOp, ...]
    original_word_count: int
    result_word_count: int

    @property
    def num_ops(self) -> int:
        return len(self.ops)

    @property
    def inserted_word_count(self) -> int:
        return sum(len(op.inserted_words) for op in self.ops)

    @property
    def deleted_word_count(self) -> int:
        return sum(op.deleted_count for op in self.ops)

    def insertion_lengths(self) -> list[int]:
        return [len(op.inserted_words) for op in self.ops if op.inserted_words]

    def removed_indices(self) -> set[int]:
        removed: set[int] = set()
        for op in self.ops:
            removed.update(range(*op.original_range))
        return removed

    def to_document(self) -> dict:
        return {
            "ops": [
                {
                    "kind": op.kind,
                    "range": list(op.original_range),
                    "insert": list(op.inserted_words),
                    "edit_type": op.edit_type,
                }
                for op in self.ops
            ],
            "original_word_count": self.original_word_count,
            "result_word_count": self.result_word_count,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "EditScript":
        ops = tuple(
            EditOp(
                kind=entry["kind"],
                original_range=tuple(entry["range"]),
                inserted_words=tuple(entry.get("insert", ())),
                edit_type=entry.get("edit_type"),
            )
            for entry in doc["ops"]
        )
        return cls(
            ops=ops,
            original_word_count=doc["original_word_count"],
            result_word_count=doc["result_word_count"],
        )


def empty_script(word_count: int) -> EditScript:
    return EditScript(ops=(), original_word_count=word_count, result_word_count=word_count)


def nw_score(original_tokens: list[str], candidate_tokens: list[str]) -> int:
    """Optimal alignment score without building instructions."""
    a_ids, b_ids = _encode(original_tokens, candidate_tokens)
    score, _ = _kernel.nw_align_ids(a_ids, b_ids)
    return score


def _encode(a: list[str], b: list[str]) -> tuple[list[int], list[int]]:
    ids: dict[str, int] = {}
    a_ids = [ids.setdefault(t, len(ids)) for t in a]
    b_ids = [ids.setdefault(t, len(ids)) for t in b]
    return a_ids, b_ids


def align(
    original_tokens: list[str],
    candidate_tokens: list[str],
    insert_tokens: list[str] | None = None,
) -> list[EditInstruction]:
    """Produce keep/delete/insert instructions turning original into candidate.

    Token equality drives matching, so callers pass normalized tokens.
    insert_tokens optionally supplies surface forms (parallel to
    candidate_tokens) recorded on insert instructions; synthesis speaks
    surface forms, not normalized ones.
    """
    if insert_tokens is None:
        insert_tokens = candidate_tokens
    elif len(insert_tokens) != len(candidate_tokens):
        raise ValueError("insert_tokens must parallel candidate_tokens")

    a_ids, b_ids = _encode(original_tokens, candidate_tokens)
    _, moves = _kernel.nw_align_ids(a_ids, b_ids)

    instructions: list[EditInstruction] = []
    i = j = 0
    for move in moves:
        if move == MOVE_DIAG:
            if original_tokens[i] == candidate_tokens[j]:
                instructions.append(EditInstruction(KEEP, i))
            else:
                instructions.append(EditInstruction(DELETE, i))
                instructions.append(EditInstruction(INSERT, i + 1, insert_tokens[j]))
            i += 1
            j += 1
        elif move == MOVE_UP:
            instructions.append(EditInstruction(DELETE, i))
            i += 1
        else:
            instructions.append(EditInstruction(INSERT, i, insert_tokens[j]))
            j += 1
    return instructions


def group_edits(instructions: list[EditInstruction]) -> EditScript:
    """Group maximal runs of non-keep instructions into edit operations."""
    ops: list[EditOp] = []
    original_count = 0
    result_count = 0

    run_deletes: list[int] = []
    run_inserts: list[str] = []
    run_point: int | None = None

    def flush() -> None:
        nonlocal run_deletes, run_inserts, run_point
        if not run_deletes and not run_inserts:
            return
        if run_deletes:
            rng = (run_deletes[0], run_deletes[-1] + 1)
            kind = REPLACEMENT if run_inserts else DELETION
        else:
            rng = (run_point, run_point)
            kind = INSERTION
        ops.append(EditOp(kind=kind, original_range=rng, inserted_words=tuple(run_inserts)))
        run_deletes, run_inserts, run_point = [], [], None

    for inst in instructions:
        if inst.kind == KEEP:
            flush()
            original_count += 1
            result_count += 1
        elif inst.kind == DELETE:
            run_deletes.append(inst.original_index)
            original_count += 1
        else:
            if run_point is None and not run_deletes:
                run_point = inst.original_index
            run_inserts.append(inst.inserted_token)
            result_count += 1
    flush()

    return EditScript(
        ops=tuple(ops),
        original_word_count=original_count,
        result_word_count=result_count,
    )


def apply_script(script: EditScript, original_tokens: list[str]) -> list[str]:
    """Apply an edit script; inverse check for align + group_edits."""
    if script.original_word_count != len(original_tokens):
        raise ScriptError(
            f"script built for {script.original_word_count} tokens, got {len(original_tokens)}"
        )
    result: list[str] = []
    cursor = 0
    for op in script.ops:
        lo, hi = op.original_range
        if lo < cursor or hi > len(original_tokens):
            raise ScriptError(f"op range [{lo}, {hi}) out of order or out of range")
        result.extend(original_tokens[cursor:lo])
        result.extend(op.inserted_words)
        cursor = hi
    result.extend(original_tokens[cursor:])
    return result


def offset_script(script: EditScript, offset: int, total_words: int) -> EditScript:
    """Rebase a segment-local script into transcript coordinates."""
    ops = tuple(
        replace(op, original_range=(op.original_range[0] + offset, op.original_range[1] + offset))
        for op in script.ops
    )
    delta = script.result_word_count - script.original_word_count
    return EditScript(
        ops=ops,
        original_word_count=total_words,
        result_word_count=total_words + delta,
    )


def merge_scripts(scripts: list[EditScript], total_words: int) -> EditScript:
    """Concatenate already-offset scripts over one transcript."""
    ops: list[EditOp] = []
    for s in scripts:
        ops.extend(s.ops)
    ops.sort(key=lambda op: (op.original_range[0], op.original_range[1]))
    deleted = sum(op.deleted_count for op in ops)
    inserted = sum(len(op.inserted_words) for op in ops)
    return EditScript(
        ops=tuple(ops),
        original_word_count=total_words,
        result_word_count=total_words - deleted + inserted,
    )
