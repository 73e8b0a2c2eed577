/**
 * Editor state: the last acknowledged server view plus optimistic pending
 * edits. Word toggles apply instantly and roll back if the server rejects
 * them; slider changes are pessimistic (the UI waits for the new document).
 */

import type { ManualEdit, ViewDocument, ViewName, ViewToken } from "./types.js";

export interface PendingEdit {
  token: number; // local handle for ack/rollback
  edit: ManualEdit;
}

export interface EditorSnapshot {
  view: ViewName;
  target: number;
  overrides: Record<number, number>;
  purpose: string;
  document: ViewDocument | null;
  pending: PendingEdit[];
}

export class EditorState {
  projectId = "";
  activeView: ViewName = "final"; // the default view
  globalTarget = 0;
  paragraphOverrides: Record<number, number> = {};
  outlinePurpose = "";
  anchorWordId: number | null = null; // scroll anchor preserved across views
  playback: { original: number; rendered: number } = { original: 0, rendered: 0 };

  private acknowledged: ViewDocument | null = null;
  private pending: PendingEdit[] = [];
  private nextToken = 1;
  private listeners: Array<() => void> = [];

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  snapshot(): EditorSnapshot {
    return {
      view: this.activeView,
      target: this.globalTarget,
      overrides: { ...this.paragraphOverrides },
      purpose: this.outlinePurpose,
      document: this.effectiveDocument(),
      pending: [...this.pending],
    };
  }

  /** Server state acknowledged: replaces the base document. */
  applyServerView(document: ViewDocument): void {
    this.acknowledged = document;
    this.notify();
  }

  get serverDocument(): ViewDocument | null {
    return this.acknowledged;
  }

  /** Queue an optimistic edit; returns a token for ack/rollback. */
  applyOptimistic(edit: ManualEdit): number {
    const token = this.nextToken++;
    this.pending.push({ token, edit });
    this.notify();
    return token;
  }

  /** Server accepted the edit: it is now part of acknowledged state. */
  acknowledge(token: number): void {
    this.pending = this.pending.filter((p) => p.token !== token);
    this.notify();
  }

  /** Server rejected the edit: drop it so the display rolls back. */
  rollback(token: number): void {
    this.pending = this.pending.filter((p) => p.token !== token);
    this.notify();
  }

  get pendingCount(): number {
    return this.pending.length;
  }

  /**
   * The acknowledged document with pending edits projected on top. Pure
   * presentation: the server remains the source of truth and replaces this
   * on the next fetch.
   */
  effectiveDocument(): ViewDocument | null {
    if (!this.acknowledged) return null;
    if (this.pending.length === 0) return this.acknowledged;

    const flips = new Map<number, "keep" | "remove">();
    const inserts: { point: number; words: string[] }[] = [];
    for (const { edit } of this.pending) {
      if (edit.kind === "toggle") {
        const current = this.wordCurrentlyCut(edit.index);
        const desired = edit.state ?? (current ? "keep" : "remove");
        flips.set(edit.index, desired);
      } else {
        inserts.push({ point: edit.point, words: edit.words });
      }
    }

    const tokens: ViewToken[] = [];
    for (const token of this.acknowledged.tokens) {
      for (const ins of inserts) {
        if (token.kind === "word" && ins.point === token.id) {
          tokens.push({ kind: "insert", at: ins.point, words: ins.words, op: -1 });
        }
      }
      if (token.kind === "word" && flips.has(token.id)) {
        tokens.push({ ...token, cut: flips.get(token.id) === "remove" });
      } else {
        tokens.push(token);
      }
    }
    return { ...this.acknowledged, tokens };
  }

  private wordCurrentlyCut(wordId: number): boolean {
    const doc = this.acknowledged;
    if (!doc) return false;
    for (const token of doc.tokens) {
      if (token.kind === "word" && token.id === wordId) return Boolean(token.cut);
    }
    return false;
  }

  setView(view: ViewName): void {
    this.activeView = view;
    this.notify();
  }

  /** Returns false when the value is already set (idempotent slider replay). */
  setGlobalTarget(target: number): boolean {
    if (this.globalTarget === target) return false;
    this.globalTarget = target;
    this.notify();
    return true;
  }

  setParagraphOverride(paragraph: number, target: number | null): boolean {
    const current = this.paragraphOverrides[paragraph];
    if (target === null) {
      if (current === undefined) return false;
      delete this.paragraphOverrides[paragraph];
    } else {
      if (current === target) return false;
      this.paragraphOverrides[paragraph] = target;
    }
    this.notify();
    return true;
  }
}
