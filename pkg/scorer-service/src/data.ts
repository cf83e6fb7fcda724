/**
 * A small bundled sentiment classification slice for mock-mode scoring, plus
 * the mask template and the default label-word (verbalizer) mapping.
 */

export interface Example {
  text: string;
  label: number;
}

/** Held-out sentences with gold labels (1 = positive, 0 = negative). */
export const SENTIMENT_SLICE: Example[] = [
  { text: "a gripping, beautifully shot film from start to finish", label: 1 },
  { text: "the plot collapses under its own tedium", label: 0 },
  { text: "an absolute joy, warm and consistently funny", label: 1 },
  { text: "flat characters and a script that goes nowhere", label: 0 },
  { text: "a quietly devastating performance anchors the story", label: 1 },
  { text: "loud, incoherent, and instantly forgettable", label: 0 },
  { text: "sharp dialogue and real emotional payoff", label: 1 },
  { text: "two hours I will never get back", label: 0 },
  { text: "inventive visuals in service of a moving story", label: 1 },
  { text: "a lazy retread of better movies", label: 0 },
  { text: "small in scale but enormous in heart", label: 1 },
  { text: "the pacing drags and the jokes land with a thud", label: 0 },
];

export const MASK_TOKEN = "<mask>";

/** Default verbalizers: class index -> word expected at the mask. */
export const DEFAULT_VERBALIZERS: Record<string, string> = {
  "0": "terrible",
  "1": "great",
};

/** prompt ⊕ input ⊕ mask-template composition for one example. */
export function composeTemplate(promptText: string, exampleText: string): string {
  const prefix = promptText.length > 0 ? promptText + " " : "";
  return `${prefix}${exampleText} It was ${MASK_TOKEN}.`;
}
