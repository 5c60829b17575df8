/** End to end against the real session service: create a session over HTTP,
 * teach store by answering the learner's questions, and watch the pantry
 * close in the client view. Requires the Python package installed. */

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { applyEvents, initialView, location, type ViewState } from "../src/view.js";
import { parseEvent } from "../src/wire.js";

const PORT = 8973;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function up(): Promise<boolean> {
  try {
    const resp = await fetch(`${BASE}/sessions/nope/state`);
    return resp.status === 404;
  } catch {
    return false;
  }
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "uvicorn", "--factory", "tabletutor.service:create_app",
     "--port", String(PORT), "--log-level", "warning"],
    { stdio: "ignore" },
  );
  for (let i = 0; i < 100; i++) {
    if (await up()) return;
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error("session service did not start");
}, 15000);

afterAll(() => {
  server?.kill();
});

const REPLIES: [string, string][] = [
  ["goal of store",
   "the goal is the cylinder is in the pantry and the pantry is closed"],
  ["goal of move", "the goal is the cylinder is in the pantry"],
  ["What action", "open the pantry"],
  ["What action", "move the cylinder to the pantry"],
  ["What action", "pick up the cylinder"],
  ["What action", "put the cylinder in the pantry"],
  ["What action", "close the pantry"],
];

async function say(sid: string, view: ViewState, text: string): Promise<ViewState> {
  const resp = await fetch(`${BASE}/sessions/${sid}/say`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ text }),
  });
  expect(resp.ok).toBe(true);
  const body = (await resp.json()) as { events: unknown[] };
  return applyEvents(view, body.events.map(parseEvent));
}

describe("live store teaching", () => {
  it("closes the pantry in the scene view", async () => {
    const created = await fetch(`${BASE}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ preset: "O+S" }),
    });
    const { session_id: sid } = (await created.json()) as { session_id: string };

    let view = await say(sid, initialView(), "store the blue cylinder");
    const used = new Set<number>();
    for (let i = 0; i < 20 && view.awaitingReply; i++) {
      const q = view.question ?? "";
      const idx = REPLIES.findIndex(
        ([pat], j) => !used.has(j) && q.includes(pat),
      );
      expect(idx).toBeGreaterThanOrEqual(0);
      used.add(idx);
      view = await say(sid, view, REPLIES[idx]![1]);
    }

    expect(view.awaitingReply).toBe(false);
    const pantry = location(view, "pantry");
    expect(pantry!.open).toBe(false);
    const texts = view.messages.map((m) => m.text);
    expect(texts).toContain("What is the goal of store?");
  }, 30000);
});
