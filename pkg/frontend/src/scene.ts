/** Scene geometry helpers shared by the canvas renderer and tests.
 *
 * World coordinates have y growing upward; the canvas has y growing
 * downward, so all drawing goes through one transform.
 */

import type { SceneObject, StateEvent } from "./wire.js";

export interface Transform {
  scale: number;
  offsetX: number;
  offsetY: number;
  worldHeight: number;
}

export function fitTransform(
  state: StateEvent,
  width: number,
  height: number,
  margin = 10,
): Transform {
  let maxX = 1;
  let maxY = 1;
  for (const l of state.locations) {
    maxX = Math.max(maxX, l.x1);
    maxY = Math.max(maxY, l.y1);
  }
  const scale = Math.min(
    (width - 2 * margin) / maxX,
    (height - 2 * margin) / maxY,
  );
  return { scale, offsetX: margin, offsetY: margin, worldHeight: maxY };
}

export function toCanvas(t: Transform, x: number, y: number): [number, number] {
  return [t.offsetX + x * t.scale, t.offsetY + (t.worldHeight - y) * t.scale];
}

export function toWorld(t: Transform, px: number, py: number): [number, number] {
  return [
    (px - t.offsetX) / t.scale,
    t.worldHeight - (py - t.offsetY) / t.scale,
  ];
}

/** Topmost object whose bounds contain the world point (click-to-point). */
export function objectAt(
  state: StateEvent,
  x: number,
  y: number,
): SceneObject | null {
  let hit: SceneObject | null = null;
  for (const o of state.objects) {
    if (x >= o.x0 && x <= o.x1 && y >= o.y0 && y <= o.y1) {
      if (hit === null || o.y0 > hit.y0) hit = o; // prefer the top of a stack
    }
  }
  return hit;
}

export function locationAt(state: StateEvent, x: number, y: number) {
  return (
    state.locations.find(
      (l) => x >= l.x0 && x <= l.x1 && y >= l.y0 && y <= l.y1,
    ) ?? null
  );
}

const COLORS: Record<string, string> = {
  red: "#d44",
  blue: "#46c",
  green: "#3a5",
  yellow: "#cb2",
};

export function fillColor(color: string): string {
  return COLORS[color] ?? "#888";
}
