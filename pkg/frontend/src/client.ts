/** Session client: REST session management plus a WebSocket event stream.
 *
 * Outgoing messages are serialized through one queue: the next message is
 * sent only after the previous exchange produced a status event, so the UI
 * can disable input while the learner is working.
 */

import { parseEvent, type WireEvent } from "./wire.js";
import { applyEvent, initialView, type ViewState } from "./view.js";

export interface Outgoing {
  text: string;
  pointing?: string | null;
}

export interface WebSocketLike {
  send(data: string): void;
  close(): void;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: (() => void) | null;
  onopen: (() => void) | null;
}

export type SocketFactory = (url: string) => WebSocketLike;

export async function createSession(
  baseUrl: string,
  options: { preset?: string; scene?: string; knowledge?: string } = {},
): Promise<string> {
  const resp = await fetch(`${baseUrl}/sessions`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ preset: "O+S", ...options }),
  });
  if (!resp.ok) throw new Error(`create session failed: ${resp.status}`);
  const body = (await resp.json()) as { session_id: string };
  return body.session_id;
}

export class SessionClient {
  view: ViewState = initialView();
  connected = false;
  private socket: WebSocketLike | null = null;
  private queue: Outgoing[] = [];
  private inFlight = false;
  private listeners: ((view: ViewState) => void)[] = [];

  constructor(
    private readonly wsUrl: string,
    private readonly makeSocket: SocketFactory,
  ) {}

  onChange(fn: (view: ViewState) => void): void {
    this.listeners.push(fn);
  }

  connect(): void {
    const socket = this.makeSocket(this.wsUrl);
    this.socket = socket;
    socket.onopen = () => {
      this.connected = true;
      this.notify();
    };
    socket.onmessage = (ev) => this.receive(parseEvent(ev.data));
    socket.onclose = () => {
      this.connected = false;
      this.socket = null;
      this.notify();
    };
  }

  close(): void {
    this.socket?.close();
  }

  /** Queue an expert utterance; empty text is rejected client-side. */
  say(text: string, pointing: string | null = null): void {
    if (!text.trim()) throw new Error("empty message");
    if (!this.connected) throw new Error("not connected");
    this.queue.push({ text, pointing });
    this.pump();
  }

  /** True while a message is outstanding (input should be disabled). */
  get busy(): boolean {
    return this.inFlight || this.queue.length > 0;
  }

  private pump(): void {
    if (this.inFlight || this.socket === null) return;
    const next = this.queue.shift();
    if (next === undefined) return;
    this.inFlight = true;
    this.socket.send(JSON.stringify(next));
    this.notify();
  }

  private receive(event: WireEvent): void {
    this.view = applyEvent(this.view, event);
    // each exchange ends with a status (or error) event
    if (event.type === "status" || event.type === "error") {
      this.inFlight = false;
      this.pump();
    }
    this.notify();
  }

  private notify(): void {
    for (const fn of this.listeners) fn(this.view);
  }
}
