/** Pure view state: a fold over the wire-event stream.
 *
 * The client performs no simulation of its own, so replaying a recorded
 * event log always reproduces the same final view, and a reconnect that
 * replays the transcript converges with an uninterrupted client.
 */

import type { MessageEvent, StateEvent, WireEvent } from "./wire.js";

export interface ViewState {
  /** Dialogue log ordered by seq; duplicates from replays are dropped. */
  messages: MessageEvent[];
  /** Latest scene snapshot, or null before the first state event. */
  scene: StateEvent | null;
  awaitingReply: boolean;
  question: string | null;
  /** Last service-reported error, cleared by the next successful event. */
  error: string | null;
}

export function initialView(): ViewState {
  return {
    messages: [],
    scene: null,
    awaitingReply: false,
    question: null,
    error: null,
  };
}

export function applyEvent(view: ViewState, event: WireEvent): ViewState {
  switch (event.type) {
    case "message": {
      if (view.messages.some((m) => m.seq === event.seq)) {
        return view; // replayed message; already shown
      }
      const messages = [...view.messages, event].sort((a, b) => a.seq - b.seq);
      return { ...view, messages, error: null };
    }
    case "state":
      return { ...view, scene: event, error: null };
    case "status":
      return {
        ...view,
        awaitingReply: event.awaiting_reply,
        question: event.question,
        error: null,
      };
    case "error":
      return { ...view, error: event.detail };
  }
}

export function applyEvents(view: ViewState, events: WireEvent[]): ViewState {
  return events.reduce(applyEvent, view);
}

/** Convenience for tests and log viewers: fold a whole recorded log. */
export function replay(events: WireEvent[]): ViewState {
  return applyEvents(initialView(), events);
}

export function location(view: ViewState, name: string) {
  return view.scene?.locations.find((l) => l.name === name) ?? null;
}

export function object(view: ViewState, id: string) {
  return view.scene?.objects.find((o) => o.id === id) ?? null;
}
