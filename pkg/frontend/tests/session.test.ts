import { describe, expect, it } from "vitest";

import { renderComparison } from "../src/compare.js";
import { DesignSession, MAX_SNAPSHOTS } from "../src/session.js";
import { goldenReport, goldenScenario } from "./helpers.js";

function sessionWithReport() {
  const session = new DesignSession(goldenScenario("survey"));
  session.acceptReport(goldenReport("survey"));
  return session;
}

describe("design session", () => {
  it("tracks dirty fields until a report is accepted", () => {
    const session = sessionWithReport();
    expect(session.dirtyFields.size).toBe(0);
    session.setField("lens.aperture_number", 4.0);
    expect(session.dirtyFields.has("lens.aperture_number")).toBe(true);
    session.acceptReport(goldenReport("survey"));
    expect(session.dirtyFields.size).toBe(0);
  });

  it("caps snapshots at four", () => {
    const session = sessionWithReport();
    for (let i = 0; i < MAX_SNAPSHOTS; i++) session.pinSnapshot(`#${i + 1}`);
    expect(session.snapshots).toHaveLength(4);
    expect(() => session.pinSnapshot("#5")).toThrow(/at most 4/);
  });

  it("snapshots are immutable and detached from later edits", () => {
    const session = sessionWithReport();
    const snapshot = session.pinSnapshot("before");
    session.setField("lens.aperture_number", 11.0);
    expect(snapshot.scenario.lens).toMatchObject({ aperture_number: 2.8 });
    expect(Object.isFrozen(snapshot.report.response)).toBe(true);
    expect(() => {
      (snapshot.report.response as { snr: unknown }).snr = 0;
    }).toThrow();
  });
});

describe("snapshot comparison", () => {
  it("asks for two snapshots before diffing", () => {
    document.body.innerHTML = '<div id="compare"></div>';
    const session = sessionWithReport();
    session.pinSnapshot("only");
    renderComparison(document.getElementById("compare")!, session.snapshots);
    expect(document.querySelector(".compare-note")).not.toBeNull();
  });

  it("identical snapshots produce a zero-diff view", () => {
    document.body.innerHTML = '<div id="compare"></div>';
    const session = sessionWithReport();
    session.pinSnapshot("a");
    session.pinSnapshot("b");
    renderComparison(document.getElementById("compare")!, session.snapshots);
    const differing = document.querySelectorAll('[data-differs="true"]');
    expect(differing).toHaveLength(0);
  });

  it("two lens choices flag focal length, aperture, FOV and response rows", () => {
    document.body.innerHTML = '<div id="compare"></div>';
    const session = new DesignSession(goldenScenario("survey"));
    session.acceptReport(goldenReport("survey"));
    session.pinSnapshot("12mm F2.8");

    const domeScenario = goldenScenario("dome");
    const other = new DesignSession(domeScenario);
    other.acceptReport(goldenReport("dome"));
    const snapshots = [...session.snapshots, other.pinSnapshot("dome F2.0")];

    renderComparison(document.getElementById("compare")!, snapshots);
    const flagged = [...document.querySelectorAll('[data-differs="true"]')]
      .map((row) => row.firstChild!.textContent);
    expect(flagged).toContain("lens.aperture_number");
    expect(flagged).toContain("viewport.kind");
    expect(flagged).toContain("Footprint X [m]");
    expect(flagged).toContain("Depth of field [m]");
    expect(flagged).toContain("Exposure [s]");
    const unchanged = [...document.querySelectorAll('[data-differs="false"]')]
      .map((row) => row.firstChild!.textContent);
    expect(unchanged).toContain("light.luminous_flux_lm");
    // auto exposure hits the same target in both designs, so the response
    // readout legitimately shows no difference
    expect(unchanged).toContain("Mean response [DN]");
  });
});
