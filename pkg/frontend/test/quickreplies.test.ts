/** Quick-reply scaffolds per question kind. */

import { describe, expect, it } from "vitest";

import { scaffoldsFor } from "../src/quickreplies.js";

describe("scaffoldsFor", () => {
  it("offers goal-sentence builders for goal questions", () => {
    const s = scaffoldsFor("What is the goal of store?");
    expect(s.length).toBeGreaterThan(0);
    expect(s[0]!.template).toContain("the goal is");
  });

  it("offers action templates for action questions", () => {
    const labels = scaffoldsFor("What action should I take?").map((s) => s.label);
    expect(labels).toContain("pick up");
    expect(labels).toContain("put");
  });

  it("fills the queried word into teaching templates", () => {
    const s = scaffoldsFor("What does cylinder mean?");
    expect(s[0]!.template).toBe("this is a cylinder");
    expect(s[0]!.needsPointing).toBe(true);
  });

  it("requires pointing for disambiguation", () => {
    const s = scaffoldsFor("Which block do you mean?");
    expect(s.every((x) => x.needsPointing)).toBe(true);
  });

  it("offers nothing when no question is pending", () => {
    expect(scaffoldsFor(null)).toEqual([]);
  });
});
