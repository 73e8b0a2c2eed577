/**
 * Transcript rendering: the three views are projections of one effective
 * script. Words carry stable ids (data-word-id) in every view so switching
 * views can restore the scroll anchor.
 */

import { DIFF_DELETION_COLOR, DIFF_INSERTION_COLOR, EDIT_TYPE_COLORS, EDIT_TYPE_ORDER } from "./theme.js";
import type { EditTypeLabel, ViewDocument, ViewName, WordToken } from "./types.js";

export type WordClickHandler = (wordId: number, currentlyCut: boolean) => void;
export type Scroller = (element: HTMLElement) => void;

const defaultScroller: Scroller = (element) =>
  element.scrollIntoView({ block: "start" });

/** Horizontal bar showing how many edits of each type were applied. */
export function renderCountBar(
  container: HTMLElement,
  counts: Record<EditTypeLabel, number>,
): void {
  container.textContent = "";
  container.classList.add("count-bar");
  for (const label of EDIT_TYPE_ORDER) {
    const count = counts[label] ?? 0;
    const entry = document.createElement("span");
    entry.className = "count-entry";
    entry.dataset.editType = label;

    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = EDIT_TYPE_COLORS[label];
    entry.appendChild(swatch);

    const value = document.createElement("span");
    value.className = "count-value";
    value.textContent = String(count);
    entry.appendChild(value);

    const name = document.createElement("span");
    name.className = "count-label";
    name.textContent = label;
    entry.appendChild(name);

    container.appendChild(entry);
  }
}

export function renderLegend(container: HTMLElement): void {
  container.textContent = "";
  container.classList.add("legend");
  for (const label of EDIT_TYPE_ORDER) {
    const item = document.createElement("span");
    item.className = "legend-item";
    item.style.backgroundColor = EDIT_TYPE_COLORS[label];
    item.textContent = label;
    container.appendChild(item);
  }
}

export class TranscriptPane {
  private anchorWordId: number | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly onWordClick: WordClickHandler,
    private readonly scroller: Scroller = defaultScroller,
  ) {
    this.container.addEventListener("scroll", () => this.captureAnchor());
  }

  /** Topmost rendered word id, tracked so view switches can restore it. */
  get anchor(): number | null {
    return this.anchorWordId;
  }

  setAnchor(wordId: number | null): void {
    this.anchorWordId = wordId;
  }

  private captureAnchor(): void {
    const paneTop = this.container.getBoundingClientRect().top;
    const words = this.container.querySelectorAll<HTMLElement>("[data-word-id]");
    for (const element of words) {
      if (element.getBoundingClientRect().bottom >= paneTop) {
        this.anchorWordId = Number(element.dataset.wordId);
        return;
      }
    }
  }

  render(doc: ViewDocument): void {
    this.container.textContent = "";
    this.container.dataset.view = doc.view;
    let paragraphIndex = 0;
    let paragraphEl = this.newParagraph(paragraphIndex);
    for (const token of doc.tokens) {
      if (token.kind === "word") {
        while (
          paragraphIndex + 1 < doc.paragraphs.length &&
          token.id >= doc.paragraphs[paragraphIndex + 1][0]
        ) {
          paragraphIndex += 1;
          paragraphEl = this.newParagraph(paragraphIndex);
        }
        paragraphEl.appendChild(this.wordElement(token, doc.view));
      } else if (token.kind === "insert") {
        paragraphEl.appendChild(this.insertElement(token.words, doc.view, token.edit_type));
      } else {
        paragraphEl.appendChild(this.cutMarkerElement());
      }
    }
    this.restoreAnchor();
  }

  private newParagraph(index: number): HTMLElement {
    const paragraph = document.createElement("p");
    paragraph.className = "paragraph";
    paragraph.dataset.paragraph = String(index);
    this.container.appendChild(paragraph);
    return paragraph;
  }

  private wordElement(token: WordToken, view: ViewName): HTMLElement {
    const element = document.createElement("span");
    element.className = "word";
    element.dataset.wordId = String(token.id);
    element.textContent = token.text;
    const cut = Boolean(token.cut);
    if (cut) {
      element.classList.add("cut");
      if (view === "diff") {
        element.style.backgroundColor = DIFF_DELETION_COLOR;
        element.style.textDecoration = "line-through";
      } else if (view === "edit_types" && token.edit_type) {
        element.style.backgroundColor = EDIT_TYPE_COLORS[token.edit_type];
        element.style.textDecoration = "line-through";
        element.dataset.editType = token.edit_type;
      }
    }
    element.addEventListener("click", () => this.onWordClick(token.id, cut));
    element.insertAdjacentText("beforeend", " ");
    return element;
  }

  private insertElement(
    words: string[],
    view: ViewName,
    editType?: EditTypeLabel,
  ): HTMLElement {
    const element = document.createElement("span");
    element.className = "insert";
    element.textContent = words.join(" ") + " ";
    if (view === "edit_types" && editType) {
      element.style.backgroundColor = EDIT_TYPE_COLORS[editType];
    } else {
      element.style.backgroundColor = DIFF_INSERTION_COLOR;
    }
    return element;
  }

  private cutMarkerElement(): HTMLElement {
    const element = document.createElement("span");
    element.className = "cut-marker";
    element.textContent = "[…] ";
    return element;
  }

  private restoreAnchor(): void {
    if (this.anchorWordId === null) return;
    const target = this.container.querySelector<HTMLElement>(
      `[data-word-id="${this.anchorWordId}"]`,
    );
    if (target) this.scroller(target);
  }

  /** Scroll to and highlight a word span (outline hover). */
  highlightRange(lo: number, hi: number): void {
    for (const element of this.container.querySelectorAll<HTMLElement>(".highlighted")) {
      element.classList.remove("highlighted");
    }
    let first: HTMLElement | null = null;
    for (let id = lo; id < hi; id++) {
      const element = this.container.querySelector<HTMLElement>(`[data-word-id="${id}"]`);
      if (element) {
        element.classList.add("highlighted");
        if (!first) first = element;
      }
    }
    if (first) this.scroller(first);
  }
}

/** Paragraph text as rendered (words not marked cut, final-view semantics). */
export function visibleParagraphText(container: HTMLElement, paragraph: number): string {
  const scope = container.querySelector(`[data-paragraph="${paragraph}"]`);
  if (!scope) return "";
  const words: string[] = [];
  for (const element of scope.querySelectorAll<HTMLElement>("[data-word-id]")) {
    if (!element.classList.contains("cut")) {
      words.push((element.textContent ?? "").trim());
    }
  }
  return words.join(" ");
}
