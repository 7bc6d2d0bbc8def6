import { readFileSync } from "node:fs";
import { join } from "node:path";

import type { FetchLike } from "../src/api.js";
import type { EvaluationReport, ScenarioDocument } from "../src/types.js";

const FIXTURES = join(__dirname, "fixtures");

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as T;
}

export const GOLDEN_NAMES = ["survey", "dome", "fast"] as const;

export function goldenScenario(name: string): ScenarioDocument {
  return fixture<ScenarioDocument>(`scenario-${name}.json`);
}

export function goldenReport(name: string): EvaluationReport {
  return fixture<EvaluationReport>(`report-${name}.json`);
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json", "x-uwcam-schema": "1" },
  });
}

/**
 * Fake service backed by the fixtures. `delayFor` lets a test hold back the
 * response to a specific request (by arrival index) to simulate a slow
 * network and provoke stale deliveries.
 */
export function fakeServer(options: {
  reportFor?: (scenario: ScenarioDocument, index: number) => unknown;
  delayForMs?: (index: number) => number;
  status?: number;
} = {}): { fetch: FetchLike; calls: { url: string; body: unknown }[] } {
  const calls: { url: string; body: unknown }[] = [];
  const fetchImpl: FetchLike = async (url, init) => {
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    const index = calls.length;
    calls.push({ url, body });
    const delay = options.delayForMs?.(index) ?? 0;
    if (delay > 0) await new Promise((resolve) => setTimeout(resolve, delay));
    if (url.endsWith("/api/schema")) return jsonResponse(fixture("schema.json"));
    if (url.endsWith("/api/presets")) return jsonResponse(fixture("presets.json"));
    if (url.endsWith("/api/evaluate")) {
      const payload = options.reportFor?.(body, index) ?? goldenReport("survey");
      return jsonResponse(payload, options.status ?? 200);
    }
    if (url.endsWith("/api/validate")) {
      return jsonResponse({ schema_version: 1, diagnostics: [] });
    }
    throw new Error(`unexpected url ${url}`);
  };
  return { fetch: fetchImpl, calls };
}
