/** Session client: queue serialization, busy state, reconnect convergence. */

import { describe, expect, it } from "vitest";

import { SessionClient, type WebSocketLike } from "../src/client.js";
import type { WireEvent } from "../src/wire.js";

class FakeSocket implements WebSocketLike {
  sent: string[] = [];
  onmessage: ((ev: { data: unknown }) => void) | null = null;
  onclose: (() => void) | null = null;
  onopen: (() => void) | null = null;

  open(): void {
    this.onopen?.();
  }

  deliver(event: WireEvent): void {
    this.onmessage?.({ data: JSON.stringify(event) });
  }

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.onclose?.();
  }
}

function connected(): [SessionClient, FakeSocket] {
  const socket = new FakeSocket();
  const client = new SessionClient("ws://test", () => socket);
  client.connect();
  socket.open();
  return [client, socket];
}

const idle: WireEvent = { type: "status", awaiting_reply: false, question: null };

describe("outgoing queue", () => {
  it("serializes messages: the next goes out after the previous status", () => {
    const [client, socket] = connected();
    client.say("store the blue cylinder");
    client.say("the goal is the cylinder is in the pantry");
    expect(socket.sent).toHaveLength(1);
    expect(client.busy).toBe(true);
    socket.deliver(idle);
    expect(socket.sent).toHaveLength(2);
    expect(JSON.parse(socket.sent[1]!)).toEqual({
      text: "the goal is the cylinder is in the pantry",
      pointing: null,
    });
    socket.deliver(idle);
    expect(client.busy).toBe(false);
  });

  it("attaches pointing from a scene click", () => {
    const [client, socket] = connected();
    client.say("this is blue", "obj-1");
    expect(JSON.parse(socket.sent[0]!)).toEqual({
      text: "this is blue",
      pointing: "obj-1",
    });
  });

  it("rejects empty text client-side", () => {
    const [client] = connected();
    expect(() => client.say("   ")).toThrow(/empty/);
  });

  it("rejects sends before the connection is open", () => {
    const socket = new FakeSocket();
    const client = new SessionClient("ws://test", () => socket);
    client.connect();
    expect(() => client.say("hello")).toThrow(/not connected/);
  });

  it("resumes the queue after a service error event", () => {
    const [client, socket] = connected();
    client.say("first");
    client.say("second");
    socket.deliver({ type: "error", detail: "malformed" });
    expect(client.view.error).toBe("malformed");
    expect(socket.sent).toHaveLength(2);
  });
});

describe("reconnect", () => {
  it("converges with an uninterrupted client after transcript replay", () => {
    const transcript: WireEvent[] = [
      { type: "message", speaker: "expert", text: "pick up the cylinder",
        pointing: null, seq: 0 },
      { type: "message", speaker: "learner", text: "Which block do you mean?",
        pointing: null, seq: 1 },
    ];
    const [client, socket] = connected();
    for (const e of transcript) socket.deliver(e);
    socket.close();
    expect(client.connected).toBe(false);

    const socket2 = new FakeSocket();
    const client2 = new SessionClient("ws://test", () => socket2);
    // carry the old view across the reconnect, as the app does
    client2.view = client.view;
    client2.connect();
    socket2.open();
    for (const e of transcript) socket2.deliver(e); // server replays
    expect(client2.view.messages).toHaveLength(2);
    expect(client2.view).toEqual(client.view);
  });
});
