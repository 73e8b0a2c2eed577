/**
 * Audio pane: native playback for original and rendered audio plus the
 * generate button driving a render job.
 */

import type { ServiceClient } from "./api.js";

export class AudioPane {
  private statusEl: HTMLElement;
  private renderedEl: HTMLAudioElement;
  private polling = false;

  constructor(
    private readonly container: HTMLElement,
    private readonly client: ServiceClient,
    private readonly projectId: string,
    private readonly renderContext: () => {
      target: number;
      overrides: Record<number, number>;
    },
  ) {
    this.container.classList.add("audio-pane");

    const originalLabel = document.createElement("h3");
    originalLabel.textContent = "Original";
    this.container.appendChild(originalLabel);
    const original = document.createElement("audio");
    original.controls = true;
    original.src = client.audioUrl(projectId, "original");
    this.container.appendChild(original);

    const renderedLabel = document.createElement("h3");
    renderedLabel.textContent = "Shortened";
    this.container.appendChild(renderedLabel);
    this.renderedEl = document.createElement("audio");
    this.renderedEl.controls = true;
    this.container.appendChild(this.renderedEl);

    const generate = document.createElement("button");
    generate.textContent = "Generate Audio";
    generate.addEventListener("click", () => void this.generate());
    this.container.appendChild(generate);

    this.statusEl = document.createElement("div");
    this.statusEl.className = "render-status";
    this.container.appendChild(this.statusEl);
  }

  async generate(): Promise<void> {
    if (this.polling) return;
    this.polling = true;
    this.statusEl.textContent = "rendering…";
    try {
      const { job_id } = await this.client.startRender(
        this.projectId,
        this.renderContext(),
      );
      let state = "queued";
      while (state === "queued" || state === "running") {
        await new Promise((resolve) => setTimeout(resolve, 500));
        const job = await this.client.pollJob(job_id);
        state = job.state;
        if (state === "failed") {
          this.statusEl.textContent = `render failed: ${job.error ?? "unknown"}`;
          return;
        }
      }
      this.statusEl.textContent = "done";
      // cache-bust so the element reloads the latest render
      this.renderedEl.src = `${this.client.audioUrl(this.projectId, "rendered")}?v=${Date.now()}`;
    } catch (error) {
      this.statusEl.textContent = `render failed: ${String(error)}`;
    } finally {
      this.polling = false;
    }
  }
}
