// Payload shapes served by the uwcam HTTP API. Numbers may arrive as the
// strings "inf" / "-inf" where a quantity is unbounded (depth of field past
// the hyperfocal distance); the UI renders those verbatim.

export type ApiNumber = number | "inf" | "-inf" | "nan";

export type ScenarioDocument = {
  schema_version: number;
  [group: string]: unknown;
};

export interface Diagnostic {
  severity: "error" | "warning";
  code: string;
  message: string;
  source?: string;
  line?: number;
}

export interface DiagnosticsBody {
  schema_version: number;
  diagnostics: Diagnostic[];
}

export interface StageSpectrum {
  name: string;
  unit: string;
  values: number[];
}

export interface EvaluationReport {
  schema_version: number;
  response: {
    digital_value_dn: ApiNumber;
    frame_average_dn: ApiNumber;
    mean_cos4_factor: ApiNumber;
    absorbed_electrons: ApiNumber;
    absorbed_photons: ApiNumber;
    snr: ApiNumber;
    snr_db: ApiNumber;
    saturated: boolean;
  };
  derived_settings: {
    exposure_time_s: ApiNumber;
    required_exposure_s: ApiNumber | null;
    exposure_capped_by_blur: boolean;
    auto_exposure: boolean;
    target_dn: ApiNumber;
    gain_db: ApiNumber;
    aperture_number_effective: ApiNumber;
    focal_length_effective_mm: ApiNumber;
    focus_distance_required_m: ApiNumber | null;
  };
  constraints: {
    acquisition_rate_hz: ApiNumber;
    max_exposure_s: ApiNumber;
    dof_m: ApiNumber;
    fov_x_m: ApiNumber;
    fov_y_m: ApiNumber;
    min_aperture_for_dof: ApiNumber | null;
    required_exposure_s: ApiNumber | null;
    chosen_exposure_s: ApiNumber;
    feasible: boolean;
    violations: string[];
  };
  stage_spectra?: {
    wavelength_nm: number[];
    stages: StageSpectrum[];
  };
}

export interface SchemaField {
  path: string;
  label: string;
  type: "number" | "enum" | "preset" | "string";
  required: boolean;
  sweepable: boolean;
  unit?: string;
  min?: number;
  max?: number;
  exclusive_min?: boolean;
  default?: number | string;
  options?: string[];
  preset_kind?: string;
}

export interface SchemaGroup {
  name: string;
  label: string;
  fields: SchemaField[];
}

export interface ScenarioSchema {
  schema_version: number;
  groups: SchemaGroup[];
  metrics: string[];
  stage_names: string[];
}

export interface PresetEntry {
  kind: string;
  name: string;
  provenance?: string;
  preset_kind?: string;
}

export interface PresetListing {
  schema_version: number;
  presets: PresetEntry[];
}

export interface SweepResultDocument {
  schema_version: number;
  columns: string[];
  rows: (number | string)[][];
}
