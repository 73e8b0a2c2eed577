/**
 * Edit-type display order and palette: gray filler, green repetition,
 * yellow emphasis, orange clarification, red information.
 */

import type { EditTypeLabel } from "./types.js";

export const EDIT_TYPE_ORDER: EditTypeLabel[] = [
  "Filler Word Removal",
  "Repetition Removal",
  "Emphasis Removal",
  "Clarification",
  "Information Removal",
];

export const EDIT_TYPE_COLORS: Record<EditTypeLabel, string> = {
  "Filler Word Removal": "#dcdfe3",
  "Repetition Removal": "#cde8c5",
  "Emphasis Removal": "#f6e7a9",
  Clarification: "#f8c98a",
  "Information Removal": "#f5a27d",
};

export const DIFF_DELETION_COLOR = "#eaecec";
export const DIFF_INSERTION_COLOR = "#f6e5f1";

/** Importance 1-10 mapped onto the light-to-dark blue stripe. */
export function importanceColor(importance: number): string {
  const clamped = Math.max(1, Math.min(10, importance));
  const lightness = 88 - ((clamped - 1) / 9) * 55; // 88% down to 33%
  return `hsl(210, 70%, ${lightness}%)`;
}
