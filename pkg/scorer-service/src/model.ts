/**
 * Model handles for scoring. The mock model is a deterministic seeded
 * function of (prompt_ids, example index): it "reads" a label word at the
 * mask by hashing the composed template, so identical requests always yield
 * identical predictions and no language model is needed.
 */

import { composeTemplate, Example } from "./data";

export interface ModelHandle {
  /** Predicted class index for one example under the given prompt. */
  predict(promptIds: number[], promptText: string, example: Example, index: number): number;
}

/** 32-bit FNV-1a over a UTF-8 string. */
function fnv1a(text: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193) >>> 0;
  }
  return h >>> 0;
}

export class MockModel implements ModelHandle {
  constructor(
    private readonly seed: number,
    private readonly numClasses: number,
  ) {
    if (numClasses < 2) throw new Error(`need at least 2 classes, got ${numClasses}`);
  }

  predict(promptIds: number[], promptText: string, example: Example, index: number): number {
    const template = composeTemplate(promptText, example.text);
    const key = `${this.seed}|${promptIds.join(",")}|${index}|${template}`;
    return fnv1a(key) % this.numClasses;
  }
}
