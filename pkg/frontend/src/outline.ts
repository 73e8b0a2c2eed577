/**
 * Outline pane: information groups with importance stripes, keyword
 * retention badges, hover-to-highlight, purpose input, and an importance
 * dim toggle for skimming low-value content.
 */

import { importanceColor } from "./theme.js";
import type { OutlineDocument } from "./types.js";

export interface OutlineCallbacks {
  onHoverRange: (lo: number, hi: number) => void;
  onPurposeSubmit: (purpose: string) => void;
}

export class OutlinePane {
  /** Bits below this importance render dimmed when the toggle is active. */
  dimThreshold = 4;
  private dimEnabled = false;

  constructor(
    private readonly container: HTMLElement,
    private readonly callbacks: OutlineCallbacks,
  ) {}

  setDimEnabled(enabled: boolean): void {
    this.dimEnabled = enabled;
  }

  render(outline: OutlineDocument): void {
    this.container.textContent = "";
    this.container.classList.add("outline");

    const purposeForm = document.createElement("form");
    purposeForm.className = "purpose-form";
    const purposeInput = document.createElement("input");
    purposeInput.type = "text";
    purposeInput.name = "purpose";
    purposeInput.placeholder = "Speech purpose (guides importance)";
    purposeInput.value = outline.purpose;
    purposeForm.appendChild(purposeInput);
    purposeForm.addEventListener("submit", (event) => {
      event.preventDefault();
      this.callbacks.onPurposeSubmit(purposeInput.value);
    });
    this.container.appendChild(purposeForm);

    for (const group of outline.groups) {
      const groupEl = document.createElement("details");
      groupEl.className = "outline-group";
      groupEl.open = true;
      groupEl.dataset.segmentId = String(group.segment_id);

      const summary = document.createElement("summary");
      const stripe = document.createElement("span");
      stripe.className = "importance-stripe";
      stripe.style.backgroundColor = importanceColor(group.importance);
      summary.appendChild(stripe);
      summary.appendChild(document.createTextNode(group.summary || "(no content)"));
      groupEl.appendChild(summary);

      for (const bit of group.bits) {
        const bitEl = document.createElement("div");
        bitEl.className = "outline-bit";
        bitEl.dataset.bitId = String(bit.id);
        if (this.dimEnabled && bit.importance < this.dimThreshold) {
          bitEl.classList.add("dimmed");
        }

        const stripeEl = document.createElement("span");
        stripeEl.className = "importance-stripe";
        stripeEl.style.backgroundColor = importanceColor(bit.importance);
        bitEl.appendChild(stripeEl);

        const title = document.createElement("span");
        title.className = "bit-title";
        title.textContent = bit.title;
        bitEl.appendChild(title);

        const retention = document.createElement("span");
        retention.className = "retention";
        retention.textContent = `${Math.round(bit.retention)}%`;
        bitEl.appendChild(retention);

        bitEl.addEventListener("mouseenter", () =>
          this.callbacks.onHoverRange(bit.word_range[0], bit.word_range[1]),
        );
        groupEl.appendChild(bitEl);
      }
      this.container.appendChild(groupEl);
    }
  }
}
