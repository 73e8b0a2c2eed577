/**
 * Thin fetch client for the shortening service. The fetch implementation is
 * injectable so tests can replay golden payloads without a network.
 */

import type {
  EditResponse,
  ManualEdit,
  OutlineDocument,
  ProjectInfo,
  RenderJobInfo,
  ViewDocument,
  ViewName,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    message: string,
    public readonly progress?: unknown,
  ) {
    super(message);
  }
}

export interface ViewQuery {
  target: number;
  view: ViewName;
  overrides?: Record<number, number>;
}

function overridesParam(overrides?: Record<number, number>): string {
  if (!overrides) return "";
  return Object.entries(overrides)
    .map(([paragraph, target]) => `${paragraph}=${target}`)
    .join(",");
}

export class ServiceClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let detail: Record<string, unknown> = {};
      try {
        detail = (await response.json()) as Record<string, unknown>;
      } catch {
        // non-JSON error body
      }
      throw new ServiceError(
        response.status,
        String(detail.error ?? response.statusText),
        detail.progress,
      );
    }
    return (await response.json()) as T;
  }

  async createProject(transcript: Blob, audio: Blob): Promise<{ id: string }> {
    const form = new FormData();
    form.append("transcript", transcript, "transcript.json");
    form.append("audio", audio, "audio.wav");
    return this.request("/projects", { method: "POST", body: form });
  }

  async getProject(projectId: string): Promise<ProjectInfo> {
    return this.request(`/projects/${projectId}`);
  }

  async getView(projectId: string, query: ViewQuery): Promise<ViewDocument> {
    const params = new URLSearchParams({
      target: String(query.target),
      view: query.view,
    });
    const overrides = overridesParam(query.overrides);
    if (overrides) params.set("overrides", overrides);
    return this.request(`/projects/${projectId}/view?${params.toString()}`);
  }

  async postEdit(
    projectId: string,
    edit: ManualEdit,
    context?: { target?: number; overrides?: Record<number, number>; purpose?: string },
  ): Promise<EditResponse> {
    const body: Record<string, unknown> = { ...edit };
    if (context?.target !== undefined) body.target = context.target;
    const overrides = overridesParam(context?.overrides);
    if (overrides) body.overrides = overrides;
    if (context?.purpose) body.purpose = context.purpose;
    return this.request(`/projects/${projectId}/edits`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async getOutline(
    projectId: string,
    purpose: string,
    context?: { target?: number; overrides?: Record<number, number> },
  ): Promise<OutlineDocument> {
    const params = new URLSearchParams();
    if (purpose) params.set("purpose", purpose);
    if (context?.target !== undefined) params.set("target", String(context.target));
    const overrides = overridesParam(context?.overrides);
    if (overrides) params.set("overrides", overrides);
    const suffix = params.toString() ? `?${params.toString()}` : "";
    return this.request(`/projects/${projectId}/outline${suffix}`);
  }

  async startRender(
    projectId: string,
    context?: { target?: number; overrides?: Record<number, number> },
  ): Promise<{ job_id: string }> {
    const body: Record<string, unknown> = {};
    if (context?.target !== undefined) body.target = context.target;
    const overrides = overridesParam(context?.overrides);
    if (overrides) body.overrides = overrides;
    return this.request(`/projects/${projectId}/render`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async pollJob(jobId: string): Promise<RenderJobInfo> {
    return this.request(`/jobs/${jobId}`);
  }

  audioUrl(projectId: string, which: "original" | "rendered"): string {
    return `${this.baseUrl}/projects/${projectId}/audio/${which}`;
  }
}
