// UI acceptance: stale-response cancellation. A delayed fake server answers
// the first request after the second; the first must be discarded.

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import type { EvaluationReport, ScenarioDocument } from "../src/types.js";
import { fakeServer, goldenReport, goldenScenario, jsonResponse } from "./helpers.js";

function tagged(report: EvaluationReport, dn: number): EvaluationReport {
  const copy = JSON.parse(JSON.stringify(report)) as EvaluationReport;
  copy.response.digital_value_dn = dn;
  return copy;
}

describe("sequence-numbered evaluation", () => {
  it("discards a slow response that arrives after a newer request", async () => {
    const base = goldenReport("survey");
    const server = fakeServer({
      reportFor: (_scenario, index) => tagged(base, index === 0 ? 111 : 222),
      delayForMs: (index) => (index === 0 ? 80 : 0),
    });
    const api = new ApiClient("", server.fetch);

    const first = api.evaluate(goldenScenario("survey"));
    const second = api.evaluate(goldenScenario("survey"));

    const [slow, fast] = await Promise.all([first, second]);
    expect(slow.kind).toBe("stale");
    expect(fast.kind).toBe("report");
    if (fast.kind === "report") {
      expect(fast.report.response.digital_value_dn).toBe(222);
    }
  });

  it("delivers in-order responses normally", async () => {
    const base = goldenReport("survey");
    const server = fakeServer({ reportFor: (_s, index) => tagged(base, 100 + index) });
    const api = new ApiClient("", server.fetch);

    const first = await api.evaluate(goldenScenario("survey"));
    const second = await api.evaluate(goldenScenario("survey"));
    expect(first.kind).toBe("report");
    expect(second.kind).toBe("report");
    if (first.kind === "report" && second.kind === "report") {
      expect(first.report.response.digital_value_dn).toBe(100);
      expect(second.report.response.digital_value_dn).toBe(101);
    }
  });

  it("latest of three racing requests wins, earlier two are stale", async () => {
    const base = goldenReport("survey");
    const server = fakeServer({
      reportFor: (_s, index) => tagged(base, index),
      delayForMs: (index) => [90, 50, 0][index] ?? 0,
    });
    const api = new ApiClient("", server.fetch);
    const outcomes = await Promise.all([
      api.evaluate(goldenScenario("survey")),
      api.evaluate(goldenScenario("survey")),
      api.evaluate(goldenScenario("survey")),
    ]);
    expect(outcomes.map((o) => o.kind)).toEqual(["stale", "stale", "report"]);
  });

  it("422 maps to structured diagnostics, not an exception", async () => {
    const api = new ApiClient("", async () =>
      jsonResponse({ schema_version: 1, diagnostics: [
        { severity: "error", code: "out-of-range", message: "bad",
          source: "mission.overlap_fraction" }] }, 422));
    const outcome = await api.evaluate(goldenScenario("survey"));
    expect(outcome.kind).toBe("invalid");
    if (outcome.kind === "invalid") {
      expect(outcome.diagnostics.diagnostics[0]!.source).toBe("mission.overlap_fraction");
    }
  });

  it("sweep propagates the 413 cell cap as an ApiError", async () => {
    const api = new ApiClient("", async () =>
      jsonResponse({ schema_version: 1, diagnostics: [
        { severity: "error", code: "sweep-too-large", message: "too many cells" }] }, 413));
    await expect(
      api.sweep(goldenScenario("survey") as ScenarioDocument,
                [{ path: "lens.aperture_number", start: 1, stop: 1000, step: 0.001 }],
                ["dof"]),
    ).rejects.toMatchObject({ status: 413 });
  });
});
