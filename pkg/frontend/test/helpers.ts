/**
 * Test support: golden payload loading and a replaying fetch mock.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";

const goldenDir = join(dirname(fileURLToPath(import.meta.url)), "golden");

export function golden<T>(name: string): T {
  return JSON.parse(readFileSync(join(goldenDir, name), "utf-8")) as T;
}

export interface RecordedRequest {
  url: string;
  method: string;
  body?: unknown;
}

/**
 * Fetch replacement replaying canned responses. Routes are matched by
 * "METHOD pathname" with query parameters available to the responder.
 */
export function mockFetch(
  routes: Record<
    string,
    (params: URLSearchParams, body: unknown) => { status?: number; json: unknown }
  >,
  log: RecordedRequest[] = [],
): FetchLike {
  return async (input, init) => {
    const url = new URL(input, "http://mock.test");
    const method = (init?.method ?? "GET").toUpperCase();
    let body: unknown;
    if (typeof init?.body === "string") body = JSON.parse(init.body);
    log.push({ url: url.pathname + url.search, method, body });
    const responder = routes[`${method} ${url.pathname}`];
    if (!responder) {
      return new Response(JSON.stringify({ error: `no route ${method} ${url.pathname}` }), {
        status: 404,
        headers: { "Content-Type": "application/json" },
      });
    }
    const result = responder(url.searchParams, body);
    return new Response(JSON.stringify(result.json), {
      status: result.status ?? 200,
      headers: { "Content-Type": "application/json" },
    });
  };
}
