/** The view is a pure fold over the wire stream: replaying a recorded
 * session log reproduces the final view exactly. */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { applyEvents, initialView, location, object, replay } from "../src/view.js";
import { parseEvent, type WireEvent } from "../src/wire.js";

const fixture = JSON.parse(
  readFileSync(new URL("./fixtures/store-session.json", import.meta.url), "utf8"),
) as { events: unknown[]; final_state: unknown };

const log: WireEvent[] = fixture.events.map(parseEvent);

describe("recorded store-teaching log", () => {
  it("ends with the pantry closed and the cylinder inside it", () => {
    const view = replay(log);
    const pantry = location(view, "pantry");
    expect(pantry).not.toBeNull();
    expect(pantry!.openable).toBe(true);
    expect(pantry!.open).toBe(false);
    const cylinder = object(view, "obj-1");
    expect(cylinder).not.toBeNull();
    expect(cylinder!.x0).toBeGreaterThanOrEqual(pantry!.x0);
    expect(cylinder!.x1).toBeLessThanOrEqual(pantry!.x1);
    expect(view.awaitingReply).toBe(false);
  });

  it("matches the service's final state snapshot", () => {
    const view = replay(log);
    expect(view.scene).toEqual(parseEvent(fixture.final_state));
  });

  it("shows the goal question before the expert's goal sentence", () => {
    const view = replay(log);
    const texts = view.messages.map((m) => `${m.speaker}: ${m.text}`);
    const q = texts.indexOf("learner: What is the goal of store?");
    const a = texts.findIndex((t) => t.includes("the goal is the cylinder"));
    expect(q).toBeGreaterThanOrEqual(0);
    expect(a).toBeGreaterThan(q);
  });

  it("is deterministic and composable", () => {
    expect(replay(log)).toEqual(replay(log));
    const half = Math.floor(log.length / 2);
    const pieced = applyEvents(
      applyEvents(initialView(), log.slice(0, half)),
      log.slice(half),
    );
    expect(pieced).toEqual(replay(log));
  });

  it("keeps the dialogue ordered by seq and drops replayed duplicates", () => {
    const doubled = [...log, ...log]; // a reconnect replays the transcript
    const view = replay(doubled);
    const seqs = view.messages.map((m) => m.seq);
    expect(seqs).toEqual([...seqs].sort((a, b) => a - b));
    expect(new Set(seqs).size).toBe(seqs.length);
    expect(view).toEqual(replay(log));
  });
});

describe("event handling", () => {
  it("records service errors and clears them on the next event", () => {
    let view = applyEvents(initialView(), [
      { type: "error", detail: "empty message text" },
    ]);
    expect(view.error).toBe("empty message text");
    view = applyEvents(view, [
      { type: "status", awaiting_reply: false, question: null },
    ]);
    expect(view.error).toBeNull();
  });

  it("tracks the pending question from status events", () => {
    const view = applyEvents(initialView(), [
      { type: "status", awaiting_reply: true, question: "What is the goal of store?" },
    ]);
    expect(view.awaitingReply).toBe(true);
    expect(view.question).toBe("What is the goal of store?");
  });
});
