/**
 * The scoring service: POST /score maps a prompt onto a mask-template over
 * the held-out slice, reads the model's label word per example, and returns
 * the task metric. Responses use the canonical wire serialization so they
 * validate bit-exactly against the shared golden schema.
 *
 * Built on node:http directly — the whole surface is one JSON POST route, so
 * a framework would add nothing but dependencies.
 */

import { createServer, IncomingMessage, Server, ServerResponse } from "http";

import { DEFAULT_VERBALIZERS, Example, SENTIMENT_SLICE } from "./data";
import { accuracy, f1Binary } from "./metrics";
import { MockModel, ModelHandle } from "./model";
import {
  canonicalJson,
  PROTO_HEADER,
  PROTO_VERSION,
  ScoreResponse,
  scoreRequestSchema,
} from "./schema";

export interface ServiceConfig {
  metric: "acc" | "f1";
  seed: number;
  mock: boolean;
  /** Include per-example predictions/labels dumps in responses. */
  dumpPredictions: boolean;
  /** Class index (as string) -> label word filled at the mask. */
  verbalizers: Record<string, string>;
  dataset: Example[];
}

export const DEFAULT_CONFIG: ServiceConfig = {
  metric: "acc",
  seed: 0,
  mock: true,
  dumpPredictions: true,
  verbalizers: DEFAULT_VERBALIZERS,
  dataset: SENTIMENT_SLICE,
};

export interface ScorerSession {
  model: ModelHandle;
  config: ServiceConfig;
}

export function createSession(config: ServiceConfig): ScorerSession {
  const classes = Object.keys(config.verbalizers);
  if (classes.length < 2) {
    throw new Error("verbalizer map must cover at least 2 classes");
  }
  for (const ex of config.dataset) {
    if (!(String(ex.label) in config.verbalizers)) {
      throw new Error(`verbalizer map missing class ${ex.label}`);
    }
  }
  if (!config.mock) {
    throw new Error(
      "real-model mode is not available in this build; run with mock mode",
    );
  }
  return { model: new MockModel(config.seed, classes.length), config };
}

export function scorePrompt(
  session: ScorerSession,
  promptText: string,
  promptIds: number[],
): ScoreResponse {
  const { config, model } = session;
  const predictions = config.dataset.map((ex, i) =>
    model.predict(promptIds, promptText, ex, i),
  );
  const labels = config.dataset.map((ex) => ex.label);
  const score =
    config.metric === "f1" ? f1Binary(predictions, labels) : accuracy(predictions, labels);
  const response: ScoreResponse = { score, n_examples: labels.length };
  if (config.dumpPredictions) {
    response.predictions = predictions;
    response.labels = labels;
  }
  return response;
}

const MAX_BODY_BYTES = 1 << 20;

function send(res: ServerResponse, status: number, payload: unknown): void {
  const body = canonicalJson(payload);
  res.writeHead(status, {
    "Content-Type": "application/json; charset=utf-8",
    [PROTO_HEADER]: PROTO_VERSION,
  });
  res.end(body);
}

function readBody(req: IncomingMessage): Promise<string> {
  return new Promise((resolve, reject) => {
    const chunks: Buffer[] = [];
    let size = 0;
    req.on("data", (chunk: Buffer) => {
      size += chunk.length;
      if (size > MAX_BODY_BYTES) {
        reject(new Error("request body too large"));
        req.destroy();
        return;
      }
      chunks.push(chunk);
    });
    req.on("end", () => resolve(Buffer.concat(chunks).toString("utf-8")));
    req.on("error", reject);
  });
}

export function createService(config: ServiceConfig = DEFAULT_CONFIG): Server {
  const session = createSession(config);
  return createServer(async (req, res) => {
    if (req.method !== "POST" || req.url !== "/score") {
      send(res, 404, { error: `no such route: ${req.method} ${req.url}` });
      return;
    }
    let body: string;
    try {
      body = await readBody(req);
    } catch (err) {
      send(res, 400, { error: err instanceof Error ? err.message : String(err) });
      return;
    }
    let value: unknown;
    try {
      value = JSON.parse(body);
    } catch (err) {
      send(res, 400, { error: `invalid JSON body: ${err instanceof Error ? err.message : err}` });
      return;
    }
    const parsed = scoreRequestSchema.safeParse(value);
    if (!parsed.success) {
      send(res, 400, { error: parsed.error.issues.map((i) => i.message).join("; ") });
      return;
    }
    try {
      send(res, 200, scorePrompt(session, parsed.data.prompt_text, parsed.data.prompt_ids));
    } catch (err) {
      send(res, 500, { error: err instanceof Error ? err.message : String(err) });
    }
  });
}
