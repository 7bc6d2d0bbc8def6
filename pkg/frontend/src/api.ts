// HTTP client for the uwcam service. Evaluation requests carry sequence
// numbers: a response is delivered only if no newer request has been issued
// since, so slow responses can never overwrite fresh ones.

import type {
  DiagnosticsBody,
  EvaluationReport,
  PresetListing,
  ScenarioDocument,
  ScenarioSchema,
  SweepResultDocument,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: DiagnosticsBody | null,
  ) {
    super(`service responded ${status}`);
  }
}

export type EvaluateOutcome =
  | { kind: "report"; report: EvaluationReport }
  | { kind: "invalid"; diagnostics: DiagnosticsBody }
  | { kind: "stale" };

export class ApiClient {
  private evaluateSequence = 0;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path);
    if (!response.ok) throw new ApiError(response.status, null);
    return (await response.json()) as T;
  }

  private async postJson(path: string, body: unknown): Promise<Response> {
    return this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  schema(): Promise<ScenarioSchema> {
    return this.getJson<ScenarioSchema>("/api/schema");
  }

  presets(): Promise<PresetListing> {
    return this.getJson<PresetListing>("/api/presets");
  }

  /**
   * Evaluate a scenario. Responses from superseded requests resolve as
   * {kind: "stale"} and must be discarded by the caller.
   */
  async evaluate(scenario: ScenarioDocument): Promise<EvaluateOutcome> {
    const ticket = ++this.evaluateSequence;
    const response = await this.postJson("/api/evaluate", scenario);
    if (ticket !== this.evaluateSequence) return { kind: "stale" };
    if (response.status === 422) {
      return { kind: "invalid", diagnostics: (await response.json()) as DiagnosticsBody };
    }
    if (!response.ok) throw new ApiError(response.status, null);
    return { kind: "report", report: (await response.json()) as EvaluationReport };
  }

  hasInFlightEvaluate(ticket: number): boolean {
    return ticket === this.evaluateSequence;
  }

  async sweep(
    scenario: ScenarioDocument,
    params: { path: string; start: number; stop: number; step: number }[],
    metrics: string[],
  ): Promise<SweepResultDocument> {
    const response = await this.postJson("/api/sweep", { scenario, sweep: { params, metrics } });
    if (!response.ok) {
      const body = response.status === 413 || response.status === 422
        ? ((await response.json()) as DiagnosticsBody)
        : null;
      throw new ApiError(response.status, body);
    }
    return (await response.json()) as SweepResultDocument;
  }

  async validateProfile(kind: string, filename: string, content: string): Promise<DiagnosticsBody> {
    const response = await this.postJson("/api/validate", { kind, filename, content });
    if (!response.ok) throw new ApiError(response.status, null);
    return (await response.json()) as DiagnosticsBody;
  }

  async validateScenario(document: ScenarioDocument): Promise<DiagnosticsBody> {
    const response = await this.postJson("/api/validate", { kind: "scenario", document });
    if (!response.ok) throw new ApiError(response.status, null);
    return (await response.json()) as DiagnosticsBody;
  }
}
