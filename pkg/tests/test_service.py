"""The HTTP/WebSocket session service and its JSON wire schema."""

import pytest
from fastapi.testclient import TestClient

from tabletutor.service import create_app

STORE_REPLIES = [
    ("goal of store", "the goal is the cylinder is in the pantry "
                      "and the pantry is closed"),
    ("goal of move", "the goal is the cylinder is in the pantry"),
    ("What action", "open the pantry"),
    ("What action", "move the cylinder to the pantry"),
    ("What action", "pick up the cylinder"),
    ("What action", "put the cylinder in the pantry"),
    ("What action", "close the pantry"),
]


@pytest.fixture()
def client():
    return TestClient(create_app())


def _create(client, **kwargs):
    resp = client.post("/sessions", json=kwargs or {"preset": "O+S"})
    assert resp.status_code == 200
    return resp.json()["session_id"]


def _drive(client, sid, text):
    """Send a message, then answer questions from STORE_REPLIES until done."""
    events = client.post(f"/sessions/{sid}/say",
                         json={"text": text}).json()["events"]
    used = set()
    for _ in range(20):
        status = [e for e in events if e["type"] == "status"][-1]
        if not status["awaiting_reply"]:
            return
        reply = next(r for i, r in enumerate(STORE_REPLIES)
                     if i not in used and r[0] in status["question"])
        used.add(STORE_REPLIES.index(reply))
        events = client.post(f"/sessions/{sid}/say",
                             json={"text": reply[1]}).json()["events"]
    raise AssertionError("teaching dialogue did not terminate")


def _loc(state, name):
    return next(l for l in state["locations"] if l["name"] == name)


def _obj(state, oid):
    return next(o for o in state["objects"] if o["id"] == oid)


def test_teach_store_end_to_end(client):
    sid = _create(client)
    _drive(client, sid, "store the blue cylinder")
    state = client.get(f"/sessions/{sid}/state").json()
    pantry = _loc(state, "pantry")
    assert pantry["openable"] and not pantry["open"]
    cyl = _obj(state, "obj-1")
    assert pantry["x0"] <= cyl["x0"] and cyl["x1"] <= pantry["x1"]
    metrics = client.get(f"/sessions/{sid}/metrics").json()
    assert metrics["utterances"]["goal"] > 0
    transcript = client.get(f"/sessions/{sid}/transcript").json()["messages"]
    assert [m["seq"] for m in transcript] == list(range(len(transcript)))


def test_unknown_session_is_404(client):
    assert client.get("/sessions/nope/state").status_code == 404
    assert client.post("/sessions/nope/say",
                       json={"text": "hi"}).status_code == 404


def test_empty_message_is_400(client):
    sid = _create(client)
    resp = client.post(f"/sessions/{sid}/say", json={"text": "   "})
    assert resp.status_code == 400


def test_delete_session(client):
    sid = _create(client)
    assert client.delete(f"/sessions/{sid}").json() == {"ok": True}
    assert client.get(f"/sessions/{sid}/state").status_code == 404


def test_sessions_are_isolated(client):
    a = _create(client)
    b = _create(client)
    client.post(f"/sessions/{a}/say", json={"text": "pick up the cylinder"})
    assert client.get(f"/sessions/{b}/transcript").json()["messages"] == []
    assert _obj(client.get(f"/sessions/{b}/state").json(), "obj-1")


def test_websocket_round_trip_and_replay(client):
    sid = _create(client)
    with client.websocket_connect(f"/sessions/{sid}/ws") as ws:
        assert ws.receive_json()["type"] == "state"
        assert ws.receive_json() == {"type": "status", "awaiting_reply": False,
                                     "question": None}
        ws.send_json({"text": "pick up the cylinder"})
        events = [ws.receive_json()]
        while events[-1]["type"] != "status":
            events.append(ws.receive_json())
        assert events[0] == {"type": "message", "speaker": "expert",
                             "text": "pick up the cylinder", "pointing": None,
                             "seq": 0}
        state = next(e for e in events if e["type"] == "state")
        assert state["gripper"] == "obj-1"
        ws.send_json({"text": "   "})
        assert ws.receive_json()["type"] == "error"
    # a reconnect replays the transcript so a late viewer converges
    with client.websocket_connect(f"/sessions/{sid}/ws") as ws:
        first = ws.receive_json()
        assert first["type"] == "message" and first["seq"] == 0
        rest = [ws.receive_json() for _ in range(2)]
        assert [e["type"] for e in rest] == ["state", "status"]
        assert rest[0]["gripper"] == "obj-1"


def test_websocket_unknown_session_closed(client):
    from starlette.websockets import WebSocketDisconnect

    with pytest.raises(WebSocketDisconnect) as exc:
        with client.websocket_connect("/sessions/nope/ws") as ws:
            ws.receive_json()
    assert exc.value.code == 4404


def test_create_with_exported_knowledge(client, tmp_path, move_knowledge):
    from tabletutor.curriculum import teach_curriculum
    from tabletutor.presets import save_knowledge

    session = teach_curriculum("O+S", ("move",))
    path = tmp_path / "knowledge.txt"
    save_knowledge(path, session.smem, session.rule_base)
    sid = _create(client, knowledge=path.read_text())
    events = client.post(f"/sessions/{sid}/say",
                         json={"text": "move the sphere to the garbage"}
                         ).json()["events"]
    status = [e for e in events if e["type"] == "status"][-1]
    assert not status["awaiting_reply"]
    state = client.get(f"/sessions/{sid}/state").json()
    sphere, garbage = _obj(state, "obj-4"), _loc(state, "garbage")
    assert garbage["x0"] <= sphere["x0"] and sphere["x1"] <= garbage["x1"]


def test_unknown_preset_rejected(client):
    resp = client.post("/sessions", json={"preset": "O+T"})
    assert resp.status_code == 400
