/** Browser entry point: wires the session client to the DOM. */

import { createSession, SessionClient, type WebSocketLike } from "./client.js";
import { drawScene } from "./render.js";
import { objectAt, toWorld, type Transform } from "./scene.js";
import { scaffoldsFor } from "./quickreplies.js";
import type { ViewState } from "./view.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

export async function start(baseUrl: string): Promise<void> {
  const canvas = el<HTMLCanvasElement>("scene");
  const log = el<HTMLUListElement>("log");
  const input = el<HTMLInputElement>("say");
  const send = el<HTMLButtonElement>("send");
  const question = el<HTMLDivElement>("question");
  const quick = el<HTMLDivElement>("quick");
  const pointTag = el<HTMLSpanElement>("pointing");

  const sid = await createSession(baseUrl);
  const wsUrl = baseUrl.replace(/^http/, "ws") + `/sessions/${sid}/ws`;
  const client = new SessionClient(wsUrl, (url) => {
    const ws = new WebSocket(url);
    const like: WebSocketLike = {
      send: (d) => ws.send(d),
      close: () => ws.close(),
      onmessage: null,
      onclose: null,
      onopen: null,
    };
    ws.onmessage = (ev) => like.onmessage?.({ data: ev.data });
    ws.onclose = () => like.onclose?.();
    ws.onopen = () => like.onopen?.();
    return like;
  });

  let pointing: string | null = null;
  let transform: Transform | null = null;

  function render(view: ViewState): void {
    if (view.scene !== null) {
      transform = drawScene(canvas, view.scene, pointing);
    }
    log.replaceChildren(
      ...view.messages.map((m) => {
        const li = document.createElement("li");
        li.className = m.speaker;
        li.textContent =
          `${m.speaker}: ${m.text}` + (m.pointing ? ` [@ ${m.pointing}]` : "");
        return li;
      }),
    );
    log.scrollTop = log.scrollHeight;
    question.textContent = view.error
      ? `error: ${view.error}`
      : view.awaitingReply
        ? (view.question ?? "")
        : "";
    input.disabled = send.disabled = client.busy || !client.connected;
    quick.replaceChildren(
      ...scaffoldsFor(view.awaitingReply ? view.question : null).map((s) => {
        const b = document.createElement("button");
        b.textContent = s.label;
        b.onclick = () => {
          input.value = s.template;
          input.focus();
        };
        return b;
      }),
    );
  }

  function submit(): void {
    const text = input.value.trim();
    if (!text || client.busy) return;
    client.say(text, pointing);
    input.value = "";
    pointing = null;
    pointTag.textContent = "";
  }

  send.onclick = submit;
  input.onkeydown = (ev) => {
    if (ev.key === "Enter") submit();
  };
  canvas.onclick = (ev) => {
    if (client.view.scene === null || transform === null) return;
    const box = canvas.getBoundingClientRect();
    const [wx, wy] = toWorld(transform, ev.clientX - box.left, ev.clientY - box.top);
    const hit = objectAt(client.view.scene, wx, wy);
    pointing = hit?.id ?? null;
    pointTag.textContent = pointing ? `pointing at ${pointing}` : "";
    render(client.view);
  };

  client.onChange(render);
  client.connect();
}
