// UI acceptance: every numeric readout in the rendered results panel
// string-matches the service payload, for three golden scenarios.

import { beforeEach, describe, expect, it } from "vitest";

import { formatValue, resolvePath } from "../src/format.js";
import { renderDiagnosticsList, renderResultsPanel } from "../src/results.js";
import type { ApiNumber, Diagnostic } from "../src/types.js";
import { GOLDEN_NAMES, goldenReport } from "./helpers.js";

describe("results panel single source of truth", () => {
  let container: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="results"></div>';
    container = document.getElementById("results")!;
  });

  for (const name of GOLDEN_NAMES) {
    it(`golden scenario '${name}': every readout string-matches the payload`, () => {
      const report = goldenReport(name);
      renderResultsPanel(container, report);
      const readouts = container.querySelectorAll<HTMLElement>(".value[data-path]");
      expect(readouts.length).toBeGreaterThanOrEqual(18);
      for (const el of readouts) {
        const path = el.dataset.path!;
        const payloadValue = resolvePath(report, path);
        expect(el.textContent, path).toBe(
          formatValue(payloadValue as ApiNumber | null),
        );
        // numbers render as String(payload value): digit-for-digit identical
        if (typeof payloadValue === "number") {
          expect(el.textContent, path).toBe(String(payloadValue));
        }
      }
    });
  }

  it("saturation and feasibility badges mirror the payload booleans", () => {
    const feasible = goldenReport("survey");
    renderResultsPanel(container, feasible);
    expect(container.querySelector(".badge-saturated")).toBeNull();
    expect(container.querySelector('[data-path="constraints.feasible"]')!.textContent)
      .toBe("feasible");

    const infeasible = goldenReport("fast");
    renderResultsPanel(container, infeasible);
    expect(infeasible.constraints.feasible).toBe(false);
    expect(container.querySelector('[data-path="constraints.feasible"]')!.textContent)
      .toBe("infeasible");
  });

  it("violation codes render verbatim and link to a scenario field", () => {
    const report = goldenReport("fast");
    expect(report.constraints.violations).toContain("underexposed-at-blur-limit");
    let linked = "";
    renderResultsPanel(container, report, {
      onViolationClicked: (fieldPath) => { linked = fieldPath; },
    });
    const code = [...container.querySelectorAll<HTMLButtonElement>(".violation-code")]
      .find((el) => el.textContent === "underexposed-at-blur-limit");
    expect(code).toBeDefined();
    const row = code!.closest("tr")!;
    expect(row.classList.contains("violated")).toBe(true);
    code!.click();
    expect(linked).toBe("exposure.target_dn");
  });

  it("feasible reports show green (non-violated) constraint rows", () => {
    renderResultsPanel(container, goldenReport("survey"));
    const rows = container.querySelectorAll("tr.constraint");
    expect(rows.length).toBeGreaterThan(0);
    for (const row of rows) {
      expect(row.classList.contains("violated")).toBe(false);
    }
  });

  it("diagnostics render verbatim, never hidden", () => {
    const diagnostics: Diagnostic[] = [
      { severity: "error", code: "out-of-range", message: "'mission.overlap_fraction' must be < 1, got 1.5", source: "mission.overlap_fraction" },
      { severity: "warning", code: "interpolated-gap", message: "65 nm gap" },
    ];
    renderDiagnosticsList(container, diagnostics);
    const items = container.querySelectorAll("li");
    expect(items).toHaveLength(2);
    expect(items[0]!.textContent).toContain("out-of-range");
    expect(items[0]!.textContent).toContain("must be < 1, got 1.5");
    expect(items[1]!.textContent).toContain("interpolated-gap");
  });
});

describe("stage spectra chart", () => {
  it("draws one polyline per stage from payload values, with non-increasing "
     + "stage energy from at-target onward", () => {
    document.body.innerHTML = '<div id="results"></div>';
    const report = goldenReport("survey");
    renderResultsPanel(document.getElementById("results")!, report);
    const chart = document.querySelector('[data-chart="stage-spectra"]')!;
    const lines = chart.querySelectorAll("polyline");
    expect(lines).toHaveLength(report.stage_spectra!.stages.length);

    // engine invariant surfaced in the UI payload: trapezoid energy of each
    // stage after at-target never grows
    const { wavelength_nm, stages } = report.stage_spectra!;
    const energy = (values: number[]) => {
      let total = 0;
      for (let i = 1; i < values.length; i++) {
        total += 0.5 * (values[i]! + values[i - 1]!) * (wavelength_nm[i]! - wavelength_nm[i - 1]!);
      }
      return total;
    };
    const energies = stages.map((s) => energy(s.values));
    for (let i = 2; i < energies.length; i++) {
      expect(energies[i]!).toBeLessThanOrEqual(energies[i - 1]! * (1 + 1e-12));
    }
  });
});
