/**
 * Editor state: optimistic edits project onto the acknowledged document and
 * roll back cleanly on rejection.
 */

import { describe, expect, it } from "vitest";

import { EditorState } from "../src/state.js";
import type { ViewDocument } from "../src/types.js";
import { golden } from "./helpers.js";

function freshState(): { state: EditorState; doc: ViewDocument } {
  const state = new EditorState();
  const doc = golden<ViewDocument>("view_50_diff.json");
  state.applyServerView(doc);
  return { state, doc };
}

function findCutWord(doc: ViewDocument): number {
  for (const token of doc.tokens) {
    if (token.kind === "word" && token.cut) return token.id;
  }
  throw new Error("no cut word in golden doc");
}

function isCut(doc: ViewDocument, wordId: number): boolean {
  for (const token of doc.tokens) {
    if (token.kind === "word" && token.id === wordId) return Boolean(token.cut);
  }
  throw new Error(`word ${wordId} missing`);
}

describe("optimistic edits", () => {
  it("toggle paints immediately and survives acknowledgement", () => {
    const { state, doc } = freshState();
    const wordId = findCutWord(doc);
    const token = state.applyOptimistic({ kind: "toggle", index: wordId, state: "keep" });
    expect(isCut(state.effectiveDocument()!, wordId)).toBe(false);
    state.acknowledge(token);
    // acknowledged: pending list empty, base doc unchanged until refetch
    expect(state.pendingCount).toBe(0);
  });

  it("rejected toggle rolls back to the server state", () => {
    const { state, doc } = freshState();
    const wordId = findCutWord(doc);
    const token = state.applyOptimistic({ kind: "toggle", index: wordId, state: "keep" });
    expect(isCut(state.effectiveDocument()!, wordId)).toBe(false);
    state.rollback(token);
    expect(isCut(state.effectiveDocument()!, wordId)).toBe(true);
    expect(state.effectiveDocument()).toEqual(doc);
  });

  it("pending insert appears before its anchor word", () => {
    const { state } = freshState();
    state.applyOptimistic({ kind: "insert", point: 5, words: ["try"] });
    const tokens = state.effectiveDocument()!.tokens;
    const insertAt = tokens.findIndex((t) => t.kind === "insert" && t.at === 5);
    const wordAt = tokens.findIndex((t) => t.kind === "word" && t.id === 5);
    expect(insertAt).toBeGreaterThan(-1);
    expect(insertAt).toBeLessThan(wordAt);
  });

  it("directionless toggle flips the current state", () => {
    const { state, doc } = freshState();
    const wordId = findCutWord(doc);
    state.applyOptimistic({ kind: "toggle", index: wordId });
    expect(isCut(state.effectiveDocument()!, wordId)).toBe(false);
  });
});

describe("targets", () => {
  it("setting the same global target twice is a no-op", () => {
    const state = new EditorState();
    expect(state.setGlobalTarget(25)).toBe(true);
    expect(state.setGlobalTarget(25)).toBe(false);
    expect(state.setGlobalTarget(50)).toBe(true);
  });

  it("paragraph overrides are tracked per paragraph", () => {
    const state = new EditorState();
    expect(state.setParagraphOverride(1, 15)).toBe(true);
    expect(state.setParagraphOverride(1, 15)).toBe(false);
    expect(state.paragraphOverrides).toEqual({ 1: 15 });
    expect(state.setParagraphOverride(1, null)).toBe(true);
    expect(state.paragraphOverrides).toEqual({});
  });
});
