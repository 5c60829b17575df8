import pytest

from tabletutor.world import (
    PickBlocked,
    PickWhileHolding,
    PrimitiveAction,
    PutIntoClosed,
    PutWhileEmpty,
    RedundantToggle,
    apply_primitive,
    default_scene,
    parse_scene,
)


def act(kind, **kw):
    return PrimitiveAction(kind, **kw)


@pytest.fixture
def scene():
    return default_scene()


def test_default_scene_layout(scene):
    assert {l.name for l in scene.locations} == {"pantry", "garbage", "table", "stove"}
    assert len(scene.objects) == 4
    assert not scene.location("pantry").open
    assert scene.location_of("obj-1").name == "table"
    assert scene.location_of("obj-4").name == "garbage"


def test_pick_up_moves_to_gripper(scene):
    s = apply_primitive(scene, act("pick-up", obj="obj-1"))
    assert s.gripper == "obj-1"
    assert s.location_of("obj-1") is None
    assert s.clock == scene.clock + 1


def test_pick_while_holding(scene):
    s = apply_primitive(scene, act("pick-up", obj="obj-1"))
    with pytest.raises(PickWhileHolding):
        apply_primitive(s, act("pick-up", obj="obj-2"))


def test_put_into_closed_pantry(scene):
    s = apply_primitive(scene, act("pick-up", obj="obj-1"))
    with pytest.raises(PutIntoClosed):
        apply_primitive(s, act("put-down", relation="in", obj="obj-1", loc="pantry"))


def test_put_while_empty(scene):
    with pytest.raises(PutWhileEmpty):
        apply_primitive(scene, act("put-down", relation="in", obj="obj-1", loc="table"))


def test_open_twice_is_redundant(scene):
    s = apply_primitive(scene, act("open", loc="pantry"))
    with pytest.raises(RedundantToggle):
        apply_primitive(s, act("open", loc="pantry"))


def test_store_sequence(scene):
    s = scene
    for a in [act("open", loc="pantry"),
              act("pick-up", obj="obj-1"),
              act("put-down", relation="in", obj="obj-1", loc="pantry"),
              act("close", loc="pantry")]:
        s = apply_primitive(s, a)
        s.check_invariants()
    assert s.location_of("obj-1").name == "pantry"
    assert not s.location("pantry").open
    assert s.gripper is None


def test_pick_from_closed_pantry_blocked(scene):
    s = scene
    for a in [act("open", loc="pantry"),
              act("pick-up", obj="obj-1"),
              act("put-down", relation="in", obj="obj-1", loc="pantry"),
              act("close", loc="pantry")]:
        s = apply_primitive(s, a)
    with pytest.raises(PickBlocked):
        apply_primitive(s, act("pick-up", obj="obj-1"))


def test_stove_toggle(scene):
    s = apply_primitive(scene, act("turn-on", loc="stove"))
    assert s.location("stove").on
    with pytest.raises(RedundantToggle):
        apply_primitive(s, act("turn-on", loc="stove"))


def test_determinism(scene):
    seq = [act("open", loc="pantry"), act("pick-up", obj="obj-2"),
           act("put-down", relation="in", obj="obj-2", loc="pantry")]

    def run(s):
        for a in seq:
            s = apply_primitive(s, a)
        return s

    assert run(scene) == run(default_scene())


def test_stacking_in_full_region():
    text = """
    location table 0 0 60 40
    location bin   0 45 10 80
    object a red cube small 5 5
    object b blue cube small 20 5
    """
    s = parse_scene(text)
    s = apply_primitive(s, act("pick-up", obj="a"))
    s = apply_primitive(s, act("put-down", relation="in", obj="a", loc="bin"))
    s = apply_primitive(s, act("pick-up", obj="b"))
    s = apply_primitive(s, act("put-down", relation="in", obj="b", loc="bin"))
    a, b = s.object("a"), s.object("b")
    assert b.bounds.y0 == a.bounds.y1  # stacked
    with pytest.raises(PickBlocked):
        apply_primitive(s, act("pick-up", obj="a"))


def test_scene_roundtrip_comments():
    s = parse_scene("# nothing but a table\nlocation table 0 0 10 10\n")
    assert len(s.locations) == 1 and not s.objects
