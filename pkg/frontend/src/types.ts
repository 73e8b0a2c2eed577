/**
 * Service payload shapes. The client computes nothing itself: every number
 * rendered anywhere comes from one of these documents.
 */

export type ViewName = "edit_types" | "diff" | "final";

export type EditTypeLabel =
  | "Filler Word Removal"
  | "Repetition Removal"
  | "Emphasis Removal"
  | "Clarification"
  | "Information Removal";

export interface WordToken {
  kind: "word";
  id: number;
  text: string;
  cut?: boolean;
  op?: number;
  edit_type?: EditTypeLabel;
}

export interface InsertToken {
  kind: "insert";
  at: number;
  words: string[];
  op: number;
  edit_type?: EditTypeLabel;
}

export interface CutMarkerToken {
  kind: "cut_marker";
  op: number;
  at: number;
}

export type ViewToken = WordToken | InsertToken | CutMarkerToken;

export interface ScriptOp {
  index: number;
  kind: "deletion" | "insertion" | "replacement";
  range: [number, number];
  insert: string[];
  edit_type: EditTypeLabel | null;
}

export interface ViewStats {
  original_words: number;
  result_words: number;
  compression: number;
  ops: number;
  inserted_words: number;
  percent_synthesized: number;
}

export interface ViewDocument {
  view: ViewName;
  target: number;
  overrides: Record<string, number>;
  version: number;
  tokens: ViewToken[];
  ops: ScriptOp[];
  type_counts: Record<EditTypeLabel, number>;
  stats: ViewStats;
  paragraphs: [number, number][];
}

export interface OutlineBit {
  id: number;
  segment_id: number;
  title: string;
  alignment_phrase: string;
  raw_importance: number;
  importance: number;
  keywords: string[];
  word_range: [number, number];
  retention: number;
}

export interface OutlineGroup {
  segment_id: number;
  summary: string;
  importance: number;
  bits: OutlineBit[];
}

export interface OutlineDocument {
  purpose: string;
  groups: OutlineGroup[];
  warnings: string[];
}

export interface ProjectInfo {
  id: string;
  state: "precomputing" | "ready";
  progress: { state: string; ready_targets: number[]; total_targets: number };
  paragraphs: [number, number][];
  segments: [number, number][];
  warnings: string[];
  version: number;
}

export interface EditResponse {
  applied: boolean;
  flag: string | null;
  version: number;
  stats: ViewStats;
  type_counts: Record<EditTypeLabel, number>;
  retentions: Record<string, number> | null;
}

export interface RenderJobInfo {
  id: string;
  project_id: string;
  state: "queued" | "running" | "done" | "failed";
  output: string | null;
  warnings: string[];
  error: string | null;
}

export type ManualEdit =
  | { kind: "toggle"; index: number; state?: "keep" | "remove" }
  | { kind: "insert"; point: number; words: string[] };

export const COMPRESSION_TARGETS = [0, 15, 25, 50, 75] as const;
export type CompressionTarget = (typeof COMPRESSION_TARGETS)[number];
