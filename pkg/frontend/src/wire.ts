/** JSON wire schema of the session service (HTTP + WebSocket). */

import { z } from "zod";

export const MessageEvent = z.object({
  type: z.literal("message"),
  speaker: z.enum(["expert", "learner"]),
  text: z.string(),
  pointing: z.string().nullable(),
  seq: z.number().int().nonnegative(),
});

export const SceneObject = z.object({
  id: z.string(),
  color: z.string(),
  shape: z.string(),
  size: z.string(),
  x0: z.number(),
  y0: z.number(),
  x1: z.number(),
  y1: z.number(),
});

export const Location = z.object({
  name: z.string(),
  x0: z.number(),
  y0: z.number(),
  x1: z.number(),
  y1: z.number(),
  openable: z.boolean(),
  open: z.boolean(),
  powered: z.boolean(),
  on: z.boolean(),
});

export const StateEvent = z.object({
  type: z.literal("state"),
  clock: z.number().int(),
  gripper: z.string().nullable(),
  objects: z.array(SceneObject),
  locations: z.array(Location),
});

export const StatusEvent = z.object({
  type: z.literal("status"),
  awaiting_reply: z.boolean(),
  question: z.string().nullable(),
});

export const ErrorEvent = z.object({
  type: z.literal("error"),
  detail: z.string(),
});

export const WireEvent = z.discriminatedUnion("type", [
  MessageEvent,
  StateEvent,
  StatusEvent,
  ErrorEvent,
]);

export type MessageEvent = z.infer<typeof MessageEvent>;
export type SceneObject = z.infer<typeof SceneObject>;
export type Location = z.infer<typeof Location>;
export type StateEvent = z.infer<typeof StateEvent>;
export type StatusEvent = z.infer<typeof StatusEvent>;
export type ErrorEvent = z.infer<typeof ErrorEvent>;
export type WireEvent = z.infer<typeof WireEvent>;

/** Parse one incoming JSON payload; throws on schema violations. */
export function parseEvent(data: unknown): WireEvent {
  return WireEvent.parse(typeof data === "string" ? JSON.parse(data) : data);
}
