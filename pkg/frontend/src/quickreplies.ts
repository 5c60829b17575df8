/** Quick-reply scaffolds: suggest well-formed replies for the learner's
 * current question so the expert stays inside the closed grammar. */

export interface Scaffold {
  label: string;
  /** Template with `_` gaps the expert fills in before sending. */
  template: string;
  needsPointing: boolean;
}

export function scaffoldsFor(question: string | null): Scaffold[] {
  if (question === null) return [];
  if (question.startsWith("What is the goal of")) {
    return [
      {
        label: "goal sentence",
        template: "the goal is the _ is in the _",
        needsPointing: false,
      },
      {
        label: "goal with state",
        template: "the goal is the _ is in the _ and the _ is closed",
        needsPointing: false,
      },
    ];
  }
  if (question === "What action should I take?") {
    return [
      { label: "pick up", template: "pick up the _", needsPointing: false },
      { label: "put", template: "put the _ in the _", needsPointing: false },
      { label: "open", template: "open the _", needsPointing: false },
      { label: "close", template: "close the _", needsPointing: false },
    ];
  }
  if (question.startsWith("What does") && question.includes("mean")) {
    const word = question.replace("What does ", "").split(" mean")[0] ?? "_";
    return [
      {
        label: "point and name",
        template: `this is a ${word}`,
        needsPointing: true,
      },
      {
        label: "point at attribute",
        template: `this is ${word}`,
        needsPointing: true,
      },
      {
        label: "show relation",
        template: `the _ is ${word} the _`,
        needsPointing: false,
      },
    ];
  }
  if (question.startsWith("Which ")) {
    return [
      { label: "point at it", template: "this is a _", needsPointing: true },
    ];
  }
  return [];
}
