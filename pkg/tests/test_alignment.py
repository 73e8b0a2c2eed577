"""Alignment: NW kernels against independent oracles, grouping, round-trips."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speechcut import alignment as al
from speechcut.alignment import _nw_py

from oracles import enumerate_alignment_score, recursive_best_score

TOKENS = ["a", "b", "c", "d", "e"]


def token_lists(max_size=8):
    return st.lists(st.sampled_from(TOKENS), max_size=max_size)


class TestKernels:
    def test_kernel_selection(self):
        assert al.KERNEL_NAME in ("cython", "python")

    @given(token_lists(5), token_lists(5))
    @settings(max_examples=150, deadline=None)
    def test_score_matches_exhaustive_enumeration(self, a, b):
        if not a and not b:
            return
        assert al.nw_score(a, b) == enumerate_alignment_score(tuple(a), tuple(b))

    @given(token_lists(8), token_lists(8))
    @settings(max_examples=150, deadline=None)
    def test_compiled_and_pure_kernels_agree(self, a, b):
        ids = {}
        a_ids = [ids.setdefault(t, len(ids)) for t in a]
        b_ids = [ids.setdefault(t, len(ids)) for t in b]
        py_score, py_moves = _nw_py.nw_align_ids(a_ids, b_ids)
        score, moves = al._kernel.nw_align_ids(a_ids, b_ids)
        assert (score, list(moves)) == (py_score, py_moves)


class TestAlign:
    def test_single_deletion(self):
        # Oracle-checked: the minimal script over all 3-vs-2 alignments.
        instructions = al.align(["a", "b", "c"], ["a", "c"])
        kinds = [(i.kind, i.original_index) for i in instructions]
        assert kinds == [("keep", 0), ("delete", 1), ("keep", 2)]

    def test_identity_is_all_keeps(self):
        instructions = al.align(["x", "y"], ["x", "y"])
        assert all(i.kind == "keep" for i in instructions)

    def test_substitution_becomes_adjacent_delete_insert(self):
        instructions = al.align(["the", "lazy", "dog"], ["the", "sleeping", "dog"])
        kinds = [i.kind for i in instructions]
        assert kinds == ["keep", "delete", "insert", "keep"]
        assert instructions[2].inserted_token == "sleeping"

    def test_surface_forms_recorded_for_inserts(self):
        instructions = al.align(
            ["a", "b"], ["a", "c"], insert_tokens=["a", "C!"]
        )
        inserts = [i for i in instructions if i.kind == "insert"]
        assert inserts[0].inserted_token == "C!"

    @given(token_lists(), token_lists())
    @settings(max_examples=200, deadline=None)
    def test_instruction_ordering_invariants(self, a, b):
        instructions = al.align(a, b)
        consumed = [i.original_index for i in instructions if i.kind != "insert"]
        assert consumed == sorted(set(consumed)) == list(range(len(a)))
        points = [i.original_index for i in instructions if i.kind == "insert"]
        assert points == sorted(points)


class TestGroupEdits:
    def test_two_separate_ops(self):
        # keep,delete,delete,keep,insert,keep -> deletion of 2 + insertion
        instructions = [
            al.EditInstruction("keep", 0),
            al.EditInstruction("delete", 1),
            al.EditInstruction("delete", 2),
            al.EditInstruction("keep", 3),
            al.EditInstruction("insert", 4, "x"),
            al.EditInstruction("keep", 4),
        ]
        script = al.group_edits(instructions)
        assert script.num_ops == 2
        assert script.ops[0].kind == "deletion"
        assert script.ops[0].original_range == (1, 3)
        assert script.ops[1].kind == "insertion"
        assert script.ops[1].inserted_words == ("x",)

    def test_all_keeps_empty_script(self):
        instructions = [al.EditInstruction("keep", i) for i in range(4)]
        script = al.group_edits(instructions)
        assert script.num_ops == 0
        assert script.original_word_count == script.result_word_count == 4

    def test_mixed_run_is_replacement(self):
        instructions = [
            al.EditInstruction("delete", 0),
            al.EditInstruction("insert", 1, "z"),
            al.EditInstruction("keep", 1),
        ]
        script = al.group_edits(instructions)
        assert script.num_ops == 1
        assert script.ops[0].kind == "replacement"

    def test_word_count_bookkeeping(self):
        script = al.group_edits(al.align(list("abcd"), list("ad")))
        assert script.original_word_count == 4
        assert script.result_word_count == 2
        assert script.result_word_count == (
            script.original_word_count
            - script.deleted_word_count
            + script.inserted_word_count
        )


class TestApplyScript:
    def test_empty_script_identity(self):
        script = al.empty_script(3)
        assert al.apply_script(script, ["x", "y", "z"]) == ["x", "y", "z"]

    def test_deletion_range(self):
        script = al.EditScript(
            ops=(al.EditOp("deletion", (1, 3)),),
            original_word_count=4,
            result_word_count=2,
        )
        assert al.apply_script(script, ["a", "b", "c", "d"]) == ["a", "d"]

    def test_wrong_length_rejected(self):
        script = al.empty_script(3)
        with pytest.raises(al.ScriptError):
            al.apply_script(script, ["one"])

    @given(token_lists(12), token_lists(12))
    @settings(max_examples=300, deadline=None)
    def test_round_trip(self, a, b):
        script = al.group_edits(al.align(a, b))
        assert al.apply_script(script, a) == b

    def test_disjoint_sequences_one_replacement(self):
        script = al.group_edits(al.align(["a", "b"], ["c", "d", "e"]))
        assert script.num_ops == 1
        assert script.ops[0].kind == "replacement"


class TestScriptSerialization:
    def test_document_round_trip(self):
        script = al.group_edits(al.align(list("abcde"), list("axe")))
        doc = script.to_document()
        assert al.EditScript.from_document(doc) == script

    def test_document_shape(self):
        script = al.group_edits(al.align(["a", "b"], ["a"]))
        doc = script.to_document()
        assert doc["ops"][0] == {
            "kind": "deletion",
            "range": [1, 2],
            "insert": [],
            "edit_type": None,
        }


class TestOffsetAndMerge:
    def test_offset_rebases_ranges(self):
        script = al.group_edits(al.align(["a", "b"], ["a"]))
        moved = al.offset_script(script, 10, 20)
        assert moved.ops[0].original_range == (11, 12)
        assert moved.original_word_count == 20
        assert moved.result_word_count == 19

    def test_merge_concatenates_in_order(self):
        s1 = al.offset_script(al.group_edits(al.align(["a", "b"], ["a"])), 0, 4)
        s2 = al.offset_script(al.group_edits(al.align(["c", "d"], ["d"])), 2, 4)
        merged = al.merge_scripts([s1, s2], 4)
        assert merged.num_ops == 2
        assert merged.result_word_count == 2
        assert al.apply_script(merged, ["a", "b", "c", "d"]) == ["a", "d"]


def test_random_pairs_against_recursive_oracle():
    rng = random.Random(13)
    for _ in range(300):
        a = [rng.choice(TOKENS) for _ in range(rng.randint(0, 8))]
        b = [rng.choice(TOKENS) for _ in range(rng.randint(0, 8))]
        if not a and not b:
            continue
        assert al.nw_score(a, b) == recursive_best_score(tuple(a), tuple(b))
        script = al.group_edits(al.align(a, b))
        assert al.apply_script(script, a) == b
