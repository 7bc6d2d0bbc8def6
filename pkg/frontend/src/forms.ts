// Schema-driven scenario editor: the form layout comes entirely from
// GET /api/schema, so new scenario fields appear without UI changes.
// Client-side checks mirror the served min/max bounds; server diagnostics
// from 422 responses land inline next to the offending field.

import type { ApiClient } from "./api.js";
import type { DesignSession } from "./session.js";
import type { Diagnostic, PresetEntry, SchemaField, ScenarioSchema } from "./types.js";

export interface FormCallbacks {
  onFieldEdited: () => void;
}

const UPLOAD_KIND_BY_GROUP: Record<string, { kind: string; docKey: string }> = {
  light: { kind: "light", docKey: "spectrum_csv" },
  water: { kind: "water", docKey: "profile_csv" },
  surface: { kind: "material", docKey: "reflectance_csv" },
};

function fieldId(path: string): string {
  return `field-${path.replace(/\./g, "-")}`;
}

function readFileText(file: File): Promise<string> {
  if (typeof file.text === "function") return file.text();
  return new Promise((resolve, reject) => {
    const reader = new FileReader();
    reader.onerror = () => reject(reader.error);
    reader.onload = () => resolve(String(reader.result));
    reader.readAsText(file);
  });
}

export function violatesBounds(field: SchemaField, value: number): string | null {
  if (Number.isNaN(value)) return "must be a number";
  if (field.min !== undefined) {
    if (field.exclusive_min && value <= field.min) return `must be > ${field.min}`;
    if (!field.exclusive_min && value < field.min) return `must be >= ${field.min}`;
  }
  if (field.max !== undefined && value > field.max) return `must be <= ${field.max}`;
  return null;
}

export class ScenarioEditor {
  private diagnosticSlots = new Map<string, HTMLElement>();
  private groupSlots = new Map<string, HTMLElement>();

  constructor(
    private readonly root: HTMLElement,
    private readonly schema: ScenarioSchema,
    private readonly presets: PresetEntry[],
    private readonly session: DesignSession,
    private readonly api: ApiClient,
    private readonly callbacks: FormCallbacks,
  ) {}

  render(): void {
    this.root.textContent = "";
    this.diagnosticSlots.clear();
    this.groupSlots.clear();
    for (const group of this.schema.groups) {
      const fieldset = document.createElement("fieldset");
      fieldset.className = "form-group";
      fieldset.dataset.group = group.name;
      const legend = document.createElement("legend");
      legend.textContent = group.label;
      fieldset.appendChild(legend);

      for (const field of group.fields) {
        fieldset.appendChild(this.renderField(field));
      }
      const upload = UPLOAD_KIND_BY_GROUP[group.name];
      if (upload) {
        fieldset.appendChild(this.renderUpload(group.name, upload.kind, upload.docKey));
      }
      const groupDiag = document.createElement("div");
      groupDiag.className = "diagnostic-slot";
      this.diagnosticSlots.set(group.name, groupDiag);
      this.groupSlots.set(group.name, groupDiag);
      fieldset.appendChild(groupDiag);
      this.root.appendChild(fieldset);
    }
  }

  private renderField(field: SchemaField): HTMLElement {
    const row = document.createElement("label");
    row.className = "form-row";
    row.htmlFor = fieldId(field.path);

    const caption = document.createElement("span");
    caption.className = "form-label";
    caption.textContent = field.unit ? `${field.label} [${field.unit}]` : field.label;
    row.appendChild(caption);

    const current = this.session.getField(field.path);
    let input: HTMLInputElement | HTMLSelectElement;
    if (field.type === "enum" || field.type === "preset") {
      const select = document.createElement("select");
      const options =
        field.type === "preset" && field.preset_kind
          ? this.presets.filter((p) => p.kind === field.preset_kind).map((p) => p.name)
          : (field.options ?? []);
      if (!field.required) {
        const blank = document.createElement("option");
        blank.value = "";
        blank.textContent = "(unset)";
        select.appendChild(blank);
      }
      for (const option of options) {
        const el = document.createElement("option");
        el.value = option;
        el.textContent = option;
        select.appendChild(el);
      }
      if (typeof current === "string") select.value = current;
      else if (field.default !== undefined) select.value = String(field.default);
      input = select;
    } else {
      const numeric = document.createElement("input");
      numeric.type = field.type === "number" ? "number" : "text";
      numeric.step = "any";
      if (current !== undefined && current !== null) numeric.value = String(current);
      else if (field.default !== undefined) numeric.value = String(field.default);
      input = numeric;
    }
    input.id = fieldId(field.path);
    input.dataset.path = field.path;
    input.addEventListener("change", () => this.commitField(field, input));
    row.appendChild(input);

    const slot = document.createElement("span");
    slot.className = "diagnostic-slot";
    slot.dataset.diagnosticFor = field.path;
    this.diagnosticSlots.set(field.path, slot);
    row.appendChild(slot);
    return row;
  }

  private commitField(field: SchemaField, input: HTMLInputElement | HTMLSelectElement): void {
    this.clearDiagnostic(field.path);
    const raw = input.value.trim();
    if (raw === "") {
      if (field.required) {
        this.showDiagnostic(field.path, { severity: "error", code: "missing-field",
          message: "required" });
        return;
      }
      this.session.removeField(field.path);
      this.callbacks.onFieldEdited();
      return;
    }
    if (field.type === "number") {
      const value = Number(raw);
      const problem = violatesBounds(field, value);
      if (problem) {
        // invalid edits never reach the service
        this.showDiagnostic(field.path, { severity: "error", code: "out-of-range",
          message: problem });
        return;
      }
      this.session.setField(field.path, value);
    } else {
      this.session.setField(field.path, raw);
    }
    this.callbacks.onFieldEdited();
  }

  private renderUpload(groupName: string, kind: string, docKey: string): HTMLElement {
    const row = document.createElement("div");
    row.className = "form-row upload-row";
    const caption = document.createElement("span");
    caption.className = "form-label";
    caption.textContent = `Custom ${kind} CSV`;
    row.appendChild(caption);

    const file = document.createElement("input");
    file.type = "file";
    file.accept = ".csv";
    file.dataset.uploadKind = kind;
    file.addEventListener("change", async () => {
      const chosen = file.files?.[0];
      if (!chosen) return;
      const body = await readFileText(chosen);
      const result = await this.api.validateProfile(kind, chosen.name, body);
      const slot = this.diagnosticSlots.get(`upload.${groupName}`);
      if (slot) slot.textContent = "";
      const errors = result.diagnostics.filter((d) => d.severity === "error");
      for (const diagnostic of result.diagnostics) {
        this.appendDiagnostic(`upload.${groupName}`, diagnostic);
      }
      if (errors.length === 0) {
        // the service accepted it; reference the file and drop the preset
        this.session.setField(`${groupName}.${docKey}`, chosen.name);
        this.session.removeField(`${groupName}.preset`);
        this.callbacks.onFieldEdited();
      }
    });
    row.appendChild(file);

    const slot = document.createElement("span");
    slot.className = "diagnostic-slot";
    slot.dataset.diagnosticFor = `upload.${groupName}`;
    this.diagnosticSlots.set(`upload.${groupName}`, slot);
    row.appendChild(slot);
    return row;
  }

  clearAllDiagnostics(): void {
    for (const slot of this.diagnosticSlots.values()) slot.textContent = "";
  }

  clearDiagnostic(path: string): void {
    const slot = this.diagnosticSlots.get(path);
    if (slot) slot.textContent = "";
  }

  showDiagnostic(path: string, diagnostic: Pick<Diagnostic, "severity" | "code" | "message">): void {
    this.clearDiagnostic(path);
    this.appendDiagnostic(path, diagnostic);
  }

  private appendDiagnostic(
    path: string,
    diagnostic: Pick<Diagnostic, "severity" | "code" | "message">,
  ): void {
    const slot = this.diagnosticSlots.get(path);
    if (!slot) return;
    const badge = document.createElement("span");
    badge.className = `diagnostic diagnostic-${diagnostic.severity}`;
    badge.textContent = `${diagnostic.code}: ${diagnostic.message}`;
    slot.appendChild(badge);
  }

  /** Place 422 diagnostics verbatim next to their fields (group slot when the
   * source path has no input of its own). */
  applyServerDiagnostics(diagnostics: Diagnostic[]): void {
    this.clearAllDiagnostics();
    for (const diagnostic of diagnostics) {
      const source = diagnostic.source ?? "";
      const target =
        this.diagnosticSlots.get(source) ??
        this.groupSlots.get(source.split(".")[0] ?? "") ??
        null;
      if (target) {
        this.appendDiagnostic(
          this.diagnosticSlots.has(source) ? source : (source.split(".")[0] ?? ""),
          diagnostic,
        );
      }
    }
  }
}
