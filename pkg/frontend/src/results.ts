// Results panel: readouts, constraint table, stage-spectra chart. Every
// numeric element carries data-path pointing at its payload field and shows
// formatValue() of that exact value -- the panel does no arithmetic.

import { renderStageSpectraChart } from "./charts.js";
import { formatValue, resolvePath } from "./format.js";
import type { ApiNumber, Diagnostic, EvaluationReport } from "./types.js";

const READOUTS: { path: string; label: string; unit?: string }[] = [
  { path: "response.digital_value_dn", label: "Mean response", unit: "DN" },
  { path: "response.frame_average_dn", label: "Frame average", unit: "DN" },
  { path: "response.snr_db", label: "SNR", unit: "dB" },
  { path: "response.snr", label: "SNR (ratio)" },
  { path: "response.absorbed_electrons", label: "Electrons", unit: "e-" },
  { path: "response.absorbed_photons", label: "Photons" },
  { path: "derived_settings.exposure_time_s", label: "Exposure", unit: "s" },
  { path: "derived_settings.required_exposure_s", label: "Exposure for target", unit: "s" },
  { path: "derived_settings.target_dn", label: "Auto target", unit: "DN" },
  { path: "derived_settings.gain_db", label: "Gain", unit: "dB" },
  { path: "derived_settings.aperture_number_effective", label: "Effective aperture" },
  { path: "derived_settings.focal_length_effective_mm", label: "Effective focal length", unit: "mm" },
  { path: "derived_settings.focus_distance_required_m", label: "Focus at (dome)", unit: "m" },
];

const CONSTRAINT_ROWS: { path: string; label: string; unit?: string; violation?: string }[] = [
  { path: "constraints.acquisition_rate_hz", label: "Acquisition rate", unit: "Hz" },
  { path: "constraints.max_exposure_s", label: "Blur-limited exposure", unit: "s",
    violation: "underexposed-at-blur-limit" },
  { path: "constraints.chosen_exposure_s", label: "Chosen exposure", unit: "s",
    violation: "motion-blur-exceeded" },
  { path: "constraints.dof_m", label: "Depth of field", unit: "m",
    violation: "dof-below-minimum" },
  { path: "constraints.min_aperture_for_dof", label: "Min aperture for DoF",
    violation: "dof-unreachable" },
  { path: "constraints.fov_x_m", label: "Footprint X", unit: "m" },
  { path: "constraints.fov_y_m", label: "Footprint Y", unit: "m" },
];

// which scenario field to highlight when a violation row is clicked
export const VIOLATION_FIELD_LINKS: Record<string, string> = {
  "underexposed-at-blur-limit": "exposure.target_dn",
  "motion-blur-exceeded": "exposure.exposure_time_s",
  "dof-below-minimum": "lens.aperture_number",
  "dof-unreachable": "mission.min_dof_m",
  saturated: "exposure.exposure_time_s",
};

export interface ResultsCallbacks {
  onViolationClicked?: (fieldPath: string) => void;
}

function readoutCell(path: string, value: unknown): HTMLElement {
  const cell = document.createElement("span");
  cell.className = "value";
  cell.dataset.path = path;
  cell.textContent = formatValue(value as ApiNumber | null);
  return cell;
}

export function renderResultsPanel(
  container: HTMLElement,
  report: EvaluationReport,
  callbacks: ResultsCallbacks = {},
): void {
  container.textContent = "";

  const header = document.createElement("div");
  header.className = "results-header";
  const badge = document.createElement("span");
  badge.className = report.response.saturated ? "badge badge-saturated" : "badge badge-ok";
  badge.dataset.path = "response.saturated";
  badge.textContent = report.response.saturated ? "SATURATED" : "in range";
  header.appendChild(badge);
  const feasible = document.createElement("span");
  feasible.className = report.constraints.feasible ? "badge badge-ok" : "badge badge-violation";
  feasible.dataset.path = "constraints.feasible";
  feasible.textContent = report.constraints.feasible ? "feasible" : "infeasible";
  header.appendChild(feasible);
  container.appendChild(header);

  const readouts = document.createElement("dl");
  readouts.className = "readouts";
  for (const item of READOUTS) {
    const term = document.createElement("dt");
    term.textContent = item.unit ? `${item.label} [${item.unit}]` : item.label;
    const detail = document.createElement("dd");
    detail.appendChild(readoutCell(item.path, resolvePath(report, item.path)));
    readouts.appendChild(term);
    readouts.appendChild(detail);
  }
  container.appendChild(readouts);

  const table = document.createElement("table");
  table.className = "constraints";
  const violations = new Set(report.constraints.violations);
  for (const row of CONSTRAINT_ROWS) {
    const tr = document.createElement("tr");
    const violated = row.violation !== undefined && violations.has(row.violation);
    tr.className = violated ? "constraint violated" : "constraint ok";
    const name = document.createElement("td");
    name.textContent = row.unit ? `${row.label} [${row.unit}]` : row.label;
    const value = document.createElement("td");
    value.appendChild(readoutCell(row.path, resolvePath(report, row.path)));
    const status = document.createElement("td");
    if (violated && row.violation) {
      const code = document.createElement("button");
      code.type = "button";
      code.className = "violation-code";
      code.textContent = row.violation;
      const linked = VIOLATION_FIELD_LINKS[row.violation];
      if (linked && callbacks.onViolationClicked) {
        code.addEventListener("click", () => callbacks.onViolationClicked!(linked));
      }
      status.appendChild(code);
    }
    tr.appendChild(name);
    tr.appendChild(value);
    tr.appendChild(status);
    table.appendChild(tr);
  }
  // violations without a dedicated row (e.g. saturated) still render verbatim
  const tabled = new Set(CONSTRAINT_ROWS.map((r) => r.violation).filter(Boolean));
  for (const code of report.constraints.violations) {
    if (tabled.has(code)) continue;
    const tr = document.createElement("tr");
    tr.className = "constraint violated";
    const name = document.createElement("td");
    name.textContent = "violation";
    const value = document.createElement("td");
    const status = document.createElement("td");
    status.textContent = code;
    tr.appendChild(name);
    tr.appendChild(value);
    tr.appendChild(status);
    table.appendChild(tr);
  }
  container.appendChild(table);

  if (report.stage_spectra) {
    const chartBox = document.createElement("div");
    chartBox.className = "chart-box";
    renderStageSpectraChart(chartBox, report.stage_spectra.wavelength_nm,
      report.stage_spectra.stages);
    container.appendChild(chartBox);
  }
}

export function renderDiagnosticsList(container: HTMLElement, diagnostics: Diagnostic[]): void {
  container.textContent = "";
  const list = document.createElement("ul");
  list.className = "diagnostics-list";
  for (const diagnostic of diagnostics) {
    const item = document.createElement("li");
    item.className = `diagnostic diagnostic-${diagnostic.severity}`;
    const where = diagnostic.source ? ` [${diagnostic.source}]` : "";
    item.textContent = `${diagnostic.code}: ${diagnostic.message}${where}`;
    list.appendChild(item);
  }
  container.appendChild(list);
}
