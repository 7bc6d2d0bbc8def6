// Design-session state: the scenario being edited, which fields the user has
// touched since the last evaluation, the latest report, and up to four
// pinned snapshots for side-by-side comparison.

import type { EvaluationReport, ScenarioDocument } from "./types.js";
import { resolvePath } from "./format.js";

export const MAX_SNAPSHOTS = 4;

export interface Snapshot {
  readonly label: string;
  readonly scenario: ScenarioDocument;
  readonly report: EvaluationReport;
}

function deepClone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

function deepFreeze<T>(value: T): T {
  if (value !== null && typeof value === "object") {
    for (const child of Object.values(value as Record<string, unknown>)) {
      deepFreeze(child);
    }
    Object.freeze(value);
  }
  return value;
}

export class DesignSession {
  private scenarioDoc: ScenarioDocument;
  private dirty = new Set<string>();
  private report: EvaluationReport | null = null;
  private pinned: Snapshot[] = [];

  constructor(initial: ScenarioDocument) {
    this.scenarioDoc = deepClone(initial);
  }

  get scenario(): ScenarioDocument {
    return this.scenarioDoc;
  }

  get lastReport(): EvaluationReport | null {
    return this.report;
  }

  get dirtyFields(): ReadonlySet<string> {
    return this.dirty;
  }

  get snapshots(): readonly Snapshot[] {
    return this.pinned;
  }

  setField(path: string, value: unknown): void {
    const parts = path.split(".");
    const leaf = parts.pop();
    if (!leaf) throw new Error(`bad field path ${path}`);
    let node: Record<string, unknown> = this.scenarioDoc;
    for (const part of parts) {
      const next = node[part];
      if (next === null || typeof next !== "object") {
        node[part] = {};
      }
      node = node[part] as Record<string, unknown>;
    }
    node[leaf] = value;
    this.dirty.add(path);
  }

  getField(path: string): unknown {
    return resolvePath(this.scenarioDoc, path);
  }

  removeField(path: string): void {
    const parts = path.split(".");
    const leaf = parts.pop();
    if (!leaf) return;
    let node: unknown = this.scenarioDoc;
    for (const part of parts) {
      if (node === null || typeof node !== "object") return;
      node = (node as Record<string, unknown>)[part];
    }
    if (node !== null && typeof node === "object") {
      delete (node as Record<string, unknown>)[leaf];
      this.dirty.add(path);
    }
  }

  acceptReport(report: EvaluationReport): void {
    this.report = report;
    this.dirty.clear();
  }

  /** Pin the current scenario + report; snapshots are immutable once taken. */
  pinSnapshot(label: string): Snapshot {
    if (!this.report) throw new Error("nothing evaluated yet");
    if (this.pinned.length >= MAX_SNAPSHOTS) {
      throw new Error(`at most ${MAX_SNAPSHOTS} snapshots`);
    }
    const snapshot: Snapshot = deepFreeze({
      label,
      scenario: deepClone(this.scenarioDoc),
      report: deepClone(this.report),
    });
    this.pinned.push(snapshot);
    return snapshot;
  }

  unpinSnapshot(index: number): void {
    this.pinned.splice(index, 1);
  }
}
