"""HTTP/WebSocket session service: create sessions, exchange dialogue
messages, and stream state deltas. JSON wire schema:

  message event   {"type": "message", "speaker", "text", "pointing", "seq"}
  state event     {"type": "state", "clock", "gripper", "objects": [...],
                   "locations": [...]}
  status event    {"type": "status", "awaiting_reply": bool,
                   "question": str | null}

A WebSocket connection first receives the full transcript (clients resume by
seq number), the current state, and a status event; thereafter one batch of
events per expert message.
"""

from __future__ import annotations

import itertools
from typing import Optional

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from pydantic import BaseModel

from .kernel import Session
from .presets import PRESETS, knowledge_from_text
from .world import WorldState, default_scene, parse_scene


class UnknownSession(Exception):
    pass


class MalformedMessage(Exception):
    pass


class CreateSession(BaseModel):
    preset: str = "O+S"
    scene: Optional[str] = None  # scene text; default table-top if omitted
    knowledge: Optional[str] = None  # exported knowledge text (O+S+T)


class ExpertMessage(BaseModel):
    text: str
    pointing: Optional[str] = None


def state_snapshot(world: WorldState) -> dict:
    return {
        "type": "state",
        "clock": world.clock,
        "gripper": world.gripper,
        "objects": [
            {"id": o.id, "color": o.color, "shape": o.shape, "size": o.size,
             "x0": o.bounds.x0, "y0": o.bounds.y0,
             "x1": o.bounds.x1, "y1": o.bounds.y1}
            for o in world.objects],
        "locations": [
            {"name": l.name,
             "x0": l.region.x0, "y0": l.region.y0,
             "x1": l.region.x1, "y1": l.region.y1,
             "openable": l.openable, "open": l.open,
             "powered": l.powered, "on": l.on}
            for l in world.locations],
    }


def status_event(session: Session) -> dict:
    return {"type": "status",
            "awaiting_reply": session.awaiting_reply,
            "question": session.pending.text if session.pending else None}


class SessionHost:
    """In-memory session registry; one logical owner per session."""

    def __init__(self) -> None:
        self.sessions: dict[str, Session] = {}
        self._ids = itertools.count(1)

    def create(self, req: CreateSession) -> str:
        scene = parse_scene(req.scene) if req.scene else default_scene()
        if req.knowledge is not None:
            session = Session(scene, knowledge=knowledge_from_text(req.knowledge))
        else:
            if req.preset not in PRESETS:
                raise MalformedMessage(f"unknown preset {req.preset!r}")
            session = Session(scene, preset=req.preset)
        sid = f"s{next(self._ids)}"
        self.sessions[sid] = session
        return sid

    def get(self, sid: str) -> Session:
        try:
            return self.sessions[sid]
        except KeyError:
            raise UnknownSession(sid) from None

    def drop(self, sid: str) -> None:
        self.get(sid)
        del self.sessions[sid]


def submit_events(session: Session, msg: ExpertMessage) -> list[dict]:
    """Deliver one expert message; return the events it produced."""
    if not msg.text.strip():
        raise MalformedMessage("empty message text")
    replies = session.submit(msg.text, msg.pointing)
    events: list[dict] = [{"type": "message", **m.to_wire()} for m in replies]
    events.append(state_snapshot(session.world))
    events.append(status_event(session))
    return events


def create_app(host: Optional[SessionHost] = None) -> FastAPI:
    host = host or SessionHost()
    app = FastAPI(title="table tutor session service")
    app.state.host = host

    @app.exception_handler(UnknownSession)
    async def _unknown(request, exc):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=404,
                            content={"error": "unknown session", "detail": str(exc)})

    @app.exception_handler(MalformedMessage)
    async def _malformed(request, exc):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=400,
                            content={"error": "malformed message", "detail": str(exc)})

    @app.post("/sessions")
    def create_session(req: CreateSession):
        sid = host.create(req)
        return {"session_id": sid}

    @app.delete("/sessions/{sid}")
    def delete_session(sid: str):
        host.drop(sid)
        return {"ok": True}

    @app.get("/sessions/{sid}/state")
    def get_state(sid: str):
        return state_snapshot(host.get(sid).world)

    @app.get("/sessions/{sid}/transcript")
    def get_transcript(sid: str):
        session = host.get(sid)
        return {"messages": [m.to_wire() for m in session.transcript]}

    @app.get("/sessions/{sid}/metrics")
    def get_metrics(sid: str):
        return host.get(sid).metrics.as_dict()

    @app.post("/sessions/{sid}/say")
    def say(sid: str, msg: ExpertMessage):
        session = host.get(sid)
        return {"events": submit_events(session, msg)}

    @app.websocket("/sessions/{sid}/ws")
    async def ws(websocket: WebSocket, sid: str):
        try:
            session = host.get(sid)
        except UnknownSession:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        # replay so reconnects converge on the same view
        for m in session.transcript:
            await websocket.send_json({"type": "message", **m.to_wire()})
        await websocket.send_json(state_snapshot(session.world))
        await websocket.send_json(status_event(session))
        try:
            while True:
                data = await websocket.receive_json()
                try:
                    msg = ExpertMessage(**data)
                    events = submit_events(session, msg)
                except (MalformedMessage, TypeError) as exc:
                    await websocket.send_json({"type": "error",
                                               "detail": str(exc)})
                    continue
                for ev in events:
                    await websocket.send_json(ev)
        except WebSocketDisconnect:
            return

    return app
