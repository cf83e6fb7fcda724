/** Task metrics computed server-side over per-example predictions. */

export type Label = number | string;

function checkLengths(predictions: Label[], labels: Label[]): void {
  if (predictions.length !== labels.length) {
    throw new Error(
      `predictions and labels differ in length: ${predictions.length} vs ${labels.length}`,
    );
  }
  if (predictions.length === 0) {
    throw new Error("cannot score an empty example set");
  }
}

export function accuracy(predictions: Label[], labels: Label[]): number {
  checkLengths(predictions, labels);
  let correct = 0;
  for (let i = 0; i < labels.length; i++) {
    if (predictions[i] === labels[i]) correct++;
  }
  return correct / labels.length;
}

/** Binary F1 = 2tp / (2tp + fp + fn); 0.0 when the denominator is zero. */
export function f1Binary(
  predictions: Label[],
  labels: Label[],
  positiveLabel: Label = 1,
): number {
  checkLengths(predictions, labels);
  const distinct = new Set<Label>([...predictions, ...labels]);
  if (distinct.size > 2) {
    throw new Error(`labels are not binary: ${distinct.size} distinct values`);
  }
  let tp = 0;
  let fp = 0;
  let fn = 0;
  for (let i = 0; i < labels.length; i++) {
    const p = predictions[i] === positiveLabel;
    const l = labels[i] === positiveLabel;
    if (p && l) tp++;
    else if (p && !l) fp++;
    else if (!p && l) fn++;
  }
  const denom = 2 * tp + fp + fn;
  return denom === 0 ? 0.0 : (2 * tp) / denom;
}
