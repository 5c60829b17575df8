/** Canvas 2D top-down scene renderer. */

import { fillColor, fitTransform, toCanvas, type Transform } from "./scene.js";
import type { SceneObject, StateEvent } from "./wire.js";

function rect(
  ctx: CanvasRenderingContext2D,
  t: Transform,
  x0: number,
  y0: number,
  x1: number,
  y1: number,
): [number, number, number, number] {
  const [px, py] = toCanvas(t, x0, y1); // top-left on canvas = (x0, y1)
  return [px, py, (x1 - x0) * t.scale, (y1 - y0) * t.scale];
}

function drawObject(
  ctx: CanvasRenderingContext2D,
  t: Transform,
  o: SceneObject,
  highlight: boolean,
): void {
  const [x, y, w, h] = rect(ctx, t, o.x0, o.y0, o.x1, o.y1);
  ctx.fillStyle = fillColor(o.color);
  ctx.strokeStyle = highlight ? "#000" : "#555";
  ctx.lineWidth = highlight ? 3 : 1;
  ctx.beginPath();
  if (o.shape === "cylinder" || o.shape === "sphere") {
    ctx.ellipse(x + w / 2, y + h / 2, w / 2, h / 2, 0, 0, 2 * Math.PI);
  } else if (o.shape === "triangle") {
    ctx.moveTo(x + w / 2, y);
    ctx.lineTo(x + w, y + h);
    ctx.lineTo(x, y + h);
    ctx.closePath();
  } else {
    ctx.rect(x, y, w, h);
  }
  ctx.fill();
  ctx.stroke();
}

export function drawScene(
  canvas: HTMLCanvasElement,
  state: StateEvent,
  selected: string | null = null,
): Transform {
  const ctx = canvas.getContext("2d");
  if (ctx === null) throw new Error("no 2d context");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const t = fitTransform(state, canvas.width, canvas.height);

  for (const l of state.locations) {
    const [x, y, w, h] = rect(ctx, t, l.x0, l.y0, l.x1, l.y1);
    ctx.fillStyle = l.openable && !l.open ? "#ccc" : "#f4f1ea";
    ctx.strokeStyle = "#999";
    ctx.lineWidth = 1;
    ctx.fillRect(x, y, w, h);
    ctx.strokeRect(x, y, w, h);
    ctx.fillStyle = "#666";
    ctx.font = "12px sans-serif";
    const tag =
      l.name +
      (l.openable ? (l.open ? " (open)" : " (closed)") : "") +
      (l.powered ? (l.on ? " (on)" : " (off)") : "");
    ctx.fillText(tag, x + 4, y + 14);
  }

  for (const o of state.objects) {
    if (o.id === state.gripper) continue;
    drawObject(ctx, t, o, o.id === selected);
  }

  // held object drawn last, floating at the top edge
  const held = state.objects.find((o) => o.id === state.gripper);
  if (held !== undefined) {
    ctx.fillStyle = "#666";
    ctx.fillText(`gripper: ${held.id}`, 8, canvas.height - 8);
    drawObject(ctx, t, held, held.id === selected);
  }
  return t;
}
