// Every number the UI shows comes verbatim from a service payload; this is
// the single place that turns payload values into display text, and it never
// does arithmetic. String(n) on a JSON-parsed number reproduces the digits
// the service sent (the engine already rounds to 9 significant digits).

import type { ApiNumber } from "./types.js";

export function formatValue(value: ApiNumber | boolean | string | null | undefined): string {
  if (value === null || value === undefined) return "—";
  if (typeof value === "number") return String(value);
  if (typeof value === "boolean") return value ? "yes" : "no";
  return value; // "inf" and friends render as-is
}

/** Resolve a dotted path inside a payload object. */
export function resolvePath(payload: unknown, path: string): unknown {
  let node: unknown = payload;
  for (const part of path.split(".")) {
    if (node === null || typeof node !== "object") return undefined;
    node = (node as Record<string, unknown>)[part];
  }
  return node;
}
