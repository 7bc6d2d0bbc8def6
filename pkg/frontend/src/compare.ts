// Snapshot comparison: a tabular diff of scenario fields and key outputs
// across pinned snapshots, with differing rows flagged.

import { formatValue, resolvePath } from "./format.js";
import type { Snapshot } from "./session.js";
import type { ApiNumber } from "./types.js";

const OUTPUT_ROWS: { path: string; label: string }[] = [
  { path: "response.digital_value_dn", label: "Mean response [DN]" },
  { path: "response.snr_db", label: "SNR [dB]" },
  { path: "constraints.dof_m", label: "Depth of field [m]" },
  { path: "constraints.fov_x_m", label: "Footprint X [m]" },
  { path: "constraints.acquisition_rate_hz", label: "Acquisition rate [Hz]" },
  { path: "constraints.feasible", label: "Feasible" },
  { path: "derived_settings.exposure_time_s", label: "Exposure [s]" },
];

function collectLeafPaths(node: unknown, prefix: string, into: Set<string>): void {
  if (node !== null && typeof node === "object" && !Array.isArray(node)) {
    for (const [key, value] of Object.entries(node as Record<string, unknown>)) {
      collectLeafPaths(value, prefix ? `${prefix}.${key}` : key, into);
    }
  } else {
    into.add(prefix);
  }
}

export function renderComparison(container: HTMLElement, snapshots: readonly Snapshot[]): void {
  container.textContent = "";
  if (snapshots.length < 2) {
    const note = document.createElement("p");
    note.className = "compare-note";
    note.textContent = "Pin at least two snapshots to compare.";
    container.appendChild(note);
    return;
  }

  const table = document.createElement("table");
  table.className = "compare-table";
  const head = document.createElement("tr");
  head.appendChild(document.createElement("th"));
  for (const snapshot of snapshots) {
    const th = document.createElement("th");
    th.textContent = snapshot.label;
    head.appendChild(th);
  }
  table.appendChild(head);

  const scenarioPaths = new Set<string>();
  for (const snapshot of snapshots) {
    collectLeafPaths(snapshot.scenario, "", scenarioPaths);
  }
  scenarioPaths.delete("schema_version");

  const appendRow = (label: string, values: string[], kind: string) => {
    const tr = document.createElement("tr");
    const differs = new Set(values).size > 1;
    tr.className = differs ? `compare-row ${kind} differs` : `compare-row ${kind}`;
    tr.dataset.differs = String(differs);
    const name = document.createElement("td");
    name.textContent = label;
    tr.appendChild(name);
    for (const value of values) {
      const td = document.createElement("td");
      td.textContent = value;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  };

  for (const path of [...scenarioPaths].sort()) {
    const values = snapshots.map((s) =>
      formatValue(resolvePath(s.scenario, path) as ApiNumber | string | null | undefined));
    appendRow(path, values, "scenario-field");
  }
  for (const row of OUTPUT_ROWS) {
    const values = snapshots.map((s) =>
      formatValue(resolvePath(s.report, row.path) as ApiNumber | boolean | null));
    appendRow(row.label, values, "output-field");
  }
  container.appendChild(table);
}
