"""Knowledge presets and the export/import of taught knowledge."""

import pytest

from tabletutor import concepts
from tabletutor.curriculum import (
    primitives_applied,
    run_instance,
    teach_curriculum,
)
from tabletutor.presets import (
    PRESETS,
    load_knowledge,
    preset_graphs,
    save_knowledge,
)
from tabletutor.world import default_scene


def test_presets_grow_monotonically():
    sizes = [len(preset_graphs(p)) for p in ("null", "O", "O+S")]
    assert sizes == sorted(sizes) and sizes[0] < sizes[1] < sizes[2]


def test_null_preset_is_primitive_verbs_only():
    graphs = preset_graphs("null")
    assert len(graphs) == 6
    assert all(concepts.primitive_of(g) for g in graphs)


def test_object_preset_has_no_relations():
    for g in preset_graphs("O"):
        for node in g.nodes.values():
            assert node.type != "relation"
    assert any(node.type == "relation"
               for g in preset_graphs("O+S") for node in g.nodes.values())


def test_unknown_preset_rejected():
    with pytest.raises(ValueError):
        preset_graphs("O+T")
    assert "O+S+T" in PRESETS


def test_save_load_roundtrip_preserves_behavior(tmp_path):
    session = teach_curriculum("O+S", ("move",))
    path = tmp_path / "knowledge.txt"
    save_knowledge(path, session.smem, session.rule_base)
    knowledge = load_knowledge(path)
    run = run_instance(knowledge, "move the triangle to the stove",
                       default_scene())
    assert primitives_applied(run) == ["pick-up(obj-2)",
                                       "put-down(in, obj-2, stove)"]
    # a second save of the loaded knowledge is byte-identical
    session2 = run_instance(knowledge, "pick up the sphere", default_scene())
    path2 = tmp_path / "again.txt"
    save_knowledge(path2, session2.smem, session2.rule_base)
    assert path2.read_text() == path.read_text()


def test_imported_knowledge_adapts_to_new_scene_locations():
    from tabletutor.curriculum import export_knowledge
    from tabletutor.kernel import Session
    from tabletutor.world import parse_scene

    knowledge = export_knowledge(teach_curriculum("O+S", ("move",)))
    scene = parse_scene("""\
location shelf 0 0 30 30
location bin 40 0 70 30
object obj-1 blue cylinder small 5 5
""")
    session = Session(scene, knowledge=knowledge)
    session.submit("move the cylinder to the bin")
    assert not session.awaiting_reply
    assert session.world.location_of("obj-1").name == "bin"
