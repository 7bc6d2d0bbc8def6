// Application wiring: fetch schema + presets, build the editor, evaluate on
// a debounce after each valid edit, and route results / diagnostics /
// snapshots / sweep launches to their panels.

import { ApiClient } from "./api.js";
import { renderSweepHeatmap } from "./charts.js";
import { renderComparison } from "./compare.js";
import { ScenarioEditor } from "./forms.js";
import { renderDiagnosticsList, renderResultsPanel } from "./results.js";
import { DesignSession, MAX_SNAPSHOTS } from "./session.js";
import type { ScenarioDocument, SchemaField, ScenarioSchema } from "./types.js";

const DEBOUNCE_MS = 300;

function requireElement<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

function defaultScenario(schema: ScenarioSchema, presetFirst: (kind: string) => string): ScenarioDocument {
  // seed a starting document from schema defaults and first presets
  const doc: ScenarioDocument = { schema_version: schema.schema_version };
  for (const group of schema.groups) {
    const section: Record<string, unknown> = {};
    for (const field of group.fields) {
      const leaf = field.path.split(".").slice(1).join(".");
      if (field.type === "preset" && field.preset_kind) {
        section[leaf] = presetFirst(field.preset_kind);
      } else if (field.default !== undefined) {
        section[leaf] = field.default;
      } else if (field.required && field.type === "enum" && field.options?.length) {
        section[leaf] = field.options[0];
      } else if (field.required && field.type === "number") {
        section[leaf] = field.min !== undefined && !field.exclusive_min ? field.min : 1;
      }
    }
    doc[group.name] = section;
  }
  return doc;
}

export async function startApp(api: ApiClient = new ApiClient("http://127.0.0.1:8765")): Promise<void> {
  const [schema, presets] = await Promise.all([api.schema(), api.presets()]);
  const firstPreset = (kind: string) =>
    presets.presets.find((p) => p.kind === kind)?.name ?? "";

  const session = new DesignSession(defaultScenario(schema, firstPreset));
  const resultsBox = requireElement<HTMLDivElement>("results");
  const diagnosticsBox = requireElement<HTMLDivElement>("diagnostics");
  const compareBox = requireElement<HTMLDivElement>("compare");
  const sweepBox = requireElement<HTMLDivElement>("sweep");
  const statusLine = requireElement<HTMLSpanElement>("status");

  let debounceTimer: number | null = null;

  const editor = new ScenarioEditor(
    requireElement<HTMLDivElement>("editor"), schema, presets.presets, session, api,
    { onFieldEdited: scheduleEvaluate },
  );
  editor.render();

  function scheduleEvaluate(): void {
    if (debounceTimer !== null) window.clearTimeout(debounceTimer);
    debounceTimer = window.setTimeout(() => {
      debounceTimer = null;
      void evaluateNow();
    }, DEBOUNCE_MS);
  }

  async function evaluateNow(): Promise<void> {
    statusLine.textContent = "evaluating…";
    const outcome = await api.evaluate(session.scenario);
    if (outcome.kind === "stale") return; // a newer request is in flight
    if (outcome.kind === "invalid") {
      statusLine.textContent = "invalid scenario";
      editor.applyServerDiagnostics(outcome.diagnostics.diagnostics);
      renderDiagnosticsList(diagnosticsBox, outcome.diagnostics.diagnostics);
      return;
    }
    editor.clearAllDiagnostics();
    diagnosticsBox.textContent = "";
    session.acceptReport(outcome.report);
    statusLine.textContent = outcome.report.constraints.feasible ? "feasible" : "infeasible";
    renderResultsPanel(resultsBox, outcome.report, {
      onViolationClicked: (fieldPath) => {
        const input = document.querySelector<HTMLElement>(`[data-path="${fieldPath}"]`);
        input?.focus();
        input?.classList.add("linked-highlight");
      },
    });
  }

  requireElement<HTMLButtonElement>("pin-snapshot").addEventListener("click", () => {
    if (!session.lastReport) return;
    if (session.snapshots.length >= MAX_SNAPSHOTS) {
      statusLine.textContent = `at most ${MAX_SNAPSHOTS} snapshots`;
      return;
    }
    session.pinSnapshot(`#${session.snapshots.length + 1}`);
    renderComparison(compareBox, session.snapshots);
  });

  const sweepFields = schema.groups
    .flatMap((g) => g.fields)
    .filter((f): f is SchemaField => f.sweepable && f.type === "number");
  const xSelect = requireElement<HTMLSelectElement>("sweep-x");
  const ySelect = requireElement<HTMLSelectElement>("sweep-y");
  for (const select of [xSelect, ySelect]) {
    for (const field of sweepFields) {
      const option = document.createElement("option");
      option.value = field.path;
      option.textContent = field.path;
      select.appendChild(option);
    }
  }
  const metricSelect = requireElement<HTMLSelectElement>("sweep-metric");
  for (const metric of schema.metrics) {
    const option = document.createElement("option");
    option.value = metric;
    option.textContent = metric;
    metricSelect.appendChild(option);
  }

  requireElement<HTMLButtonElement>("run-sweep").addEventListener("click", async () => {
    const read = (id: string) => Number(requireElement<HTMLInputElement>(id).value);
    const params = [
      { path: xSelect.value, start: read("sweep-x-start"), stop: read("sweep-x-stop"),
        step: read("sweep-x-step") },
      { path: ySelect.value, start: read("sweep-y-start"), stop: read("sweep-y-stop"),
        step: read("sweep-y-step") },
    ];
    statusLine.textContent = "sweeping…";
    try {
      const result = await api.sweep(session.scenario, params, [metricSelect.value]);
      renderSweepHeatmap(sweepBox, result, metricSelect.value);
      statusLine.textContent = `${result.rows.length} cells`;
    } catch (error) {
      statusLine.textContent = String(error);
    }
  });

  scheduleEvaluate();
}

// browser entry point; tests import pieces directly instead
if (typeof document !== "undefined" && document.getElementById("editor")) {
  void startApp();
}
