"""Session behavior: mixed-initiative teaching flows, interruption, word and
relation acquisition, disambiguation, and determinism."""

import pytest

from tabletutor import concepts, ground
from tabletutor.curriculum import LESSONS
from tabletutor.kernel import Session
from tabletutor.lessons import run_lesson
from tabletutor.memories import RetrievalFailure
from tabletutor.rules import replay_initial_state
from tabletutor.world import default_scene


def _texts(messages):
    return [m.text for m in messages]


def _teach_move(session):
    session.submit("move the blue cylinder to the garbage")
    session.submit("the goal is the cylinder is in the garbage")
    session.submit("pick up the cylinder")
    session.submit("put the cylinder in the garbage")
    return session


def test_unknown_task_triggers_goal_question():
    session = Session(default_scene())
    replies = session.submit("move the blue cylinder to the garbage")
    assert "What is the goal of move?" in _texts(replies)
    assert session.awaiting_reply
    assert session.pending.category == "goal"


def test_full_move_teaching_reaches_goal():
    session = _teach_move(Session(default_scene()))
    assert not session.awaiting_reply
    assert session.stack.depth == 1
    assert session.world.location_of("obj-1").name == "garbage"
    assert session.rule_base.has_behavior("move")


def test_taught_task_runs_without_questions():
    session = _teach_move(Session(default_scene()))
    replies = session.submit("move the sphere to the garbage")
    assert not session.awaiting_reply
    assert not replies[1:]  # no learner utterances at all
    assert session.world.location_of("obj-4").name == "garbage"


def test_stop_before_goal_discards_partial_concept():
    session = Session(default_scene())
    session.submit("move the blue cylinder to the garbage")
    replies = session.submit("stop")
    assert "Okay, I will stop." in _texts(replies)
    assert not session.awaiting_reply
    assert session.stack.depth == 1
    with pytest.raises(RetrievalFailure):
        session.smem.retrieve(concepts.verb_cue("move"))
    # the session stays usable
    _teach_move(session)
    assert session.world.location_of("obj-1").name == "garbage"


def test_stop_after_goal_keeps_goal_knowledge():
    session = Session(default_scene())
    session.submit("move the blue cylinder to the garbage")
    session.submit("the goal is the cylinder is in the garbage")
    session.submit("stop")
    graph, _, _ = session.smem.retrieve(concepts.verb_cue("move"))
    assert concepts.has_goal(graph)


def test_unparseable_input_is_reported():
    session = Session(default_scene())
    replies = session.submit("the the the")
    assert any("I do not understand" in t for t in _texts(replies))
    assert not session.awaiting_reply


def test_wrong_reply_form_reasks_goal():
    session = Session(default_scene())
    session.submit("move the blue cylinder to the garbage")
    replies = session.submit("pick up the cylinder")
    assert any("Please tell me the goal" in t for t in _texts(replies))
    assert session.awaiting_reply
    session.submit("the goal is the cylinder is in the garbage")
    assert session.pending.text == "What action should I take?"


def test_statement_outside_any_exchange_is_rejected():
    session = Session(default_scene())
    replies = session.submit("the goal is the cylinder is in the garbage")
    assert any("not expecting" in t for t in _texts(replies))


def test_null_preset_learns_words_by_demonstration():
    result = run_lesson(LESSONS[("move", "null")],
                        session=Session(default_scene(), preset="null"))
    session = result.session
    assert session.metrics.operators["object-spatial-learning"] > 0
    assert session.metrics.utterances["object-attribute"] > 0
    assert ground.resolve_word(session.smem, "blue", "adjective") == \
        ("attribute", "blue")
    assert ground.resolve_word(session.smem, "cylinder", "noun") == \
        ("shape", "cylinder")
    assert ground.resolve_word(session.smem, "garbage", "noun") == \
        ("location-name", "garbage")


def test_relation_learned_from_one_exemplar():
    session = Session(default_scene(), preset="O")
    result = run_lesson(LESSONS[("move", "O")], session=session)
    assert result.metrics.utterances["spatial-relation"] == 2
    vocab = ground.relation_vocabulary(session.smem)
    assert "in" in vocab.relations
    # the learned relation recognizes containment elsewhere in the scene
    from tabletutor.predicates import Predicate

    assert Predicate("in", ("obj-1", "garbage")) in session.beliefs()


def test_ambiguous_reference_resolved_by_pointing():
    session = Session(default_scene())
    replies = session.submit("pick up the block")
    assert "Which block do you mean?" in _texts(replies)
    session.submit("this is a block", pointing="obj-3")
    assert session.world.gripper == "obj-3"


def test_disambiguation_requires_pointing_at_candidate():
    session = Session(default_scene())
    session.submit("pick up the block")
    replies = session.submit("this is a block", pointing="pantry")
    assert any("point at the one" in t for t in _texts(replies))
    assert session.awaiting_reply


def test_impossible_primitive_is_refused():
    session = Session(default_scene())
    session.submit("pick up the cylinder")
    replies = session.submit("pick up the cube")
    assert any(t.startswith("I cannot do that.") for t in _texts(replies))


def test_no_referent_is_reported():
    session = Session(default_scene())
    replies = session.submit("pick up the red cube")
    assert any("I cannot find that" in t for t in _texts(replies))


def test_teaching_transcript_is_deterministic():
    def run():
        session = _teach_move(Session(default_scene()))
        return ([(m.speaker, m.text) for m in session.transcript],
                session.metrics.as_dict())

    assert run() == run()


def test_episodic_replay_recovers_pre_task_state():
    session = _teach_move(Session(default_scene()))
    initial = replay_initial_state(session.epmem, "move")
    assert initial.gripper is None
    assert initial.location_of("obj-1").name == "table"
    assert [ep.index for ep in session.epmem.episodes] == \
        list(range(len(session.epmem.episodes)))


def test_pointing_carries_into_command_grounding():
    session = Session(default_scene(), preset="null")
    session.submit("pick up the triangle")
    assert session.pending.text == "What does triangle mean?"
    session.submit("this is a triangle", pointing="obj-2")
    assert session.world.gripper == "obj-2"
