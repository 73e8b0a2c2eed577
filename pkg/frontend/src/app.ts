/**
 * Application wiring: compression pane (sliders, view tabs, transcript,
 * count bar), outline pane, audio pane. The client renders service payloads
 * verbatim and performs no pipeline computation of its own.
 */

import { ServiceClient, ServiceError } from "./api.js";
import { EditorState } from "./state.js";
import { OutlinePane } from "./outline.js";
import { AudioPane } from "./audio.js";
import { TranscriptPane, renderCountBar, renderLegend } from "./views.js";
import { COMPRESSION_TARGETS } from "./types.js";
import type { ViewName } from "./types.js";

const VIEW_TABS: ViewName[] = ["edit_types", "diff", "final"];
const VIEW_LABELS: Record<ViewName, string> = {
  edit_types: "Edit Types",
  diff: "Diff",
  final: "Final",
};

export class App {
  readonly state = new EditorState();
  readonly transcript: TranscriptPane;
  readonly outline: OutlinePane;
  audio: AudioPane | null = null;
  private statsEl: HTMLElement;
  private countBarEl: HTMLElement;
  private progressEl: HTMLElement;
  private paragraphSliderBox: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ServiceClient,
  ) {
    root.innerHTML = `
      <div class="layout">
        <aside id="outline-pane" class="pane"></aside>
        <main class="pane compression-pane">
          <div id="global-slider" class="slider-row"></div>
          <div id="view-tabs" class="tabs"></div>
          <div id="progress" class="progress"></div>
          <div class="transcript-wrap">
            <div id="paragraph-sliders"></div>
            <div id="transcript" class="transcript"></div>
          </div>
          <div id="legend"></div>
          <div id="count-bar"></div>
          <div id="stats" class="stats"></div>
        </main>
        <aside id="audio-pane" class="pane"></aside>
      </div>`;

    this.statsEl = this.must("#stats");
    this.countBarEl = this.must("#count-bar");
    this.progressEl = this.must("#progress");
    this.paragraphSliderBox = this.must("#paragraph-sliders");

    this.transcript = new TranscriptPane(this.must("#transcript"), (wordId, cut) =>
      void this.toggleWord(wordId, cut),
    );
    this.outline = new OutlinePane(this.must("#outline-pane"), {
      onHoverRange: (lo, hi) => this.transcript.highlightRange(lo, hi),
      onPurposeSubmit: (purpose) => void this.setPurpose(purpose),
    });
    renderLegend(this.must("#legend"));
    this.buildGlobalSlider();
    this.buildViewTabs();
  }

  private must(selector: string): HTMLElement {
    const element = this.root.querySelector<HTMLElement>(selector);
    if (!element) throw new Error(`missing ${selector}`);
    return element;
  }

  async open(projectId: string): Promise<void> {
    this.state.projectId = projectId;
    const info = await this.client.getProject(projectId);
    this.buildParagraphSliders(info.paragraphs.length);
    this.audio = new AudioPane(this.must("#audio-pane"), this.client, projectId, () => ({
      target: this.state.globalTarget,
      overrides: this.state.paragraphOverrides,
    }));
    await this.refreshView();
    await this.refreshOutline();
  }

  // -- compression pane ------------------------------------------------------

  private buildGlobalSlider(): void {
    const row = this.must("#global-slider");
    row.textContent = "Global: ";
    for (const target of COMPRESSION_TARGETS) {
      const button = document.createElement("button");
      button.className = "target-stop";
      button.dataset.target = String(target);
      button.textContent = `${target}%`;
      button.addEventListener("click", () => void this.adjustTarget("global", target));
      row.appendChild(button);
    }
  }

  private buildParagraphSliders(count: number): void {
    this.paragraphSliderBox.textContent = "";
    for (let paragraph = 0; paragraph < count; paragraph++) {
      const row = document.createElement("div");
      row.className = "paragraph-slider";
      row.dataset.paragraph = String(paragraph);
      row.textContent = `P${paragraph}: `;
      for (const target of COMPRESSION_TARGETS) {
        const button = document.createElement("button");
        button.className = "target-stop";
        button.textContent = `${target}%`;
        button.addEventListener("click", () =>
          void this.adjustTarget("paragraph", target, paragraph),
        );
        row.appendChild(button);
      }
      this.paragraphSliderBox.appendChild(row);
    }
  }

  private buildViewTabs(): void {
    const tabs = this.must("#view-tabs");
    for (const view of VIEW_TABS) {
      const button = document.createElement("button");
      button.className = "tab";
      button.dataset.view = view;
      button.textContent = VIEW_LABELS[view];
      button.addEventListener("click", () => void this.switchView(view));
      tabs.appendChild(button);
    }
  }

  async switchView(view: ViewName): Promise<void> {
    if (view === this.state.activeView) return;
    this.state.setView(view);
    await this.refreshView(); // anchor word restored by TranscriptPane
  }

  /** Slider change; no-op when the value is already selected. */
  async adjustTarget(
    scope: "global" | "paragraph",
    value: number,
    paragraph?: number,
  ): Promise<void> {
    const changed =
      scope === "global"
        ? this.state.setGlobalTarget(value)
        : this.state.setParagraphOverride(paragraph ?? 0, value);
    if (!changed) return; // idempotent replay: no duplicate fetch
    await this.refreshView();
    await this.refreshOutline();
  }

  async refreshView(): Promise<void> {
    try {
      const doc = await this.client.getView(this.state.projectId, {
        target: this.state.globalTarget,
        view: this.state.activeView,
        overrides: this.state.paragraphOverrides,
      });
      this.progressEl.textContent = "";
      this.state.applyServerView(doc);
      this.renderAll();
    } catch (error) {
      if (error instanceof ServiceError && error.status === 409) {
        this.progressEl.textContent = "Precomputing compressions…";
        return;
      }
      throw error;
    }
  }

  private renderAll(): void {
    const doc = this.state.effectiveDocument();
    if (!doc) return;
    this.transcript.render(doc);
    renderCountBar(this.countBarEl, doc.type_counts);
    const stats = doc.stats;
    this.statsEl.textContent =
      `${stats.result_words}/${stats.original_words} words ` +
      `(${Math.round(stats.compression * 100)}% removed, ` +
      `${stats.ops} edits, ${stats.percent_synthesized.toFixed(1)}% synthesized)`;
  }

  // -- manual edits -------------------------------------------------------------

  async toggleWord(wordId: number, currentlyCut: boolean): Promise<void> {
    const token = this.state.applyOptimistic({
      kind: "toggle",
      index: wordId,
      state: currentlyCut ? "keep" : "remove",
    });
    this.renderAll(); // optimistic paint
    try {
      await this.client.postEdit(
        this.state.projectId,
        { kind: "toggle", index: wordId, state: currentlyCut ? "keep" : "remove" },
        { target: this.state.globalTarget, overrides: this.state.paragraphOverrides },
      );
      this.state.acknowledge(token);
      await this.refreshView();
      await this.refreshOutline();
    } catch {
      this.state.rollback(token); // server rejected: roll back
      this.renderAll();
    }
  }

  // -- outline -----------------------------------------------------------------------

  async setPurpose(purpose: string): Promise<void> {
    this.state.outlinePurpose = purpose;
    await this.refreshOutline();
  }

  async refreshOutline(): Promise<void> {
    const outline = await this.client.getOutline(
      this.state.projectId,
      this.state.outlinePurpose,
      { target: this.state.globalTarget, overrides: this.state.paragraphOverrides },
    );
    this.outline.render(outline);
  }
}

export function bootstrap(): void {
  const params = new URLSearchParams(window.location.search);
  const projectId = params.get("project");
  const root = document.getElementById("app");
  if (!root) return;
  const app = new App(root, new ServiceClient(""));
  if (projectId) {
    void app.open(projectId);
  } else {
    root.textContent = "Pass ?project=<id> (create one via POST /projects).";
  }
}

if (typeof window !== "undefined" && !("__SPEECHCUT_TEST__" in globalThis)) {
  bootstrap();
}
