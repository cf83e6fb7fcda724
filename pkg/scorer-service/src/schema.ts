/**
 * Wire schema for POST /score, shared with the Python client via the golden
 * fixtures in ../schema/fixtures. Serialization is canonical JSON: keys
 * sorted, compact separators, raw UTF-8 — so fixtures round-trip byte-exactly.
 */

import { z } from "zod";

export const PROTO_HEADER = "X-PromptBO-Proto";
export const PROTO_VERSION = "1";

export const scoreRequestSchema = z
  .object({
    prompt_ids: z.array(z.number().int()),
    prompt_text: z.string(),
    split: z.string().min(1),
  })
  .strict();

export type ScoreRequest = z.infer<typeof scoreRequestSchema>;

const labelValue = z.union([z.number().int(), z.string()]);

export const scoreResponseSchema = z
  .object({
    score: z.number().finite(),
    n_examples: z.number().int().positive(),
    predictions: z.array(labelValue).optional(),
    labels: z.array(labelValue).optional(),
  })
  .strict()
  .refine(
    (r) =>
      (r.predictions === undefined && r.labels === undefined) ||
      (r.predictions !== undefined &&
        r.labels !== undefined &&
        r.predictions.length === r.n_examples &&
        r.labels.length === r.n_examples),
    { message: "predictions/labels lengths must equal n_examples" },
  );

export type ScoreResponse = z.infer<typeof scoreResponseSchema>;

/** JSON with recursively sorted object keys and no whitespace. */
export function canonicalJson(value: unknown): string {
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.entries(value as Record<string, unknown>)
      .filter(([, v]) => v !== undefined)
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0));
    return (
      "{" +
      entries.map(([k, v]) => JSON.stringify(k) + ":" + canonicalJson(v)).join(",") +
      "}"
    );
  }
  return JSON.stringify(value);
}
