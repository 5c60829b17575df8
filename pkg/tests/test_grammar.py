from pathlib import Path

import pytest

from tabletutor.grammar import (
    NP,
    Clause,
    Deictic,
    GoalStatement,
    Imperative,
    Lexicon,
    MetaReply,
    Param,
    ParseError,
    TeachingReply,
    UnknownWord,
    parse,
    pretty,
)

CORPUS = Path(__file__).parent / "fixtures" / "utterances.txt"


def corpus_lines():
    for line in CORPUS.read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        form, utterance = line.split("\t", 1)
        yield form, utterance


def test_store_imperative():
    tree = parse("store the blue cylinder")
    assert tree == Imperative("store", (("direct-object", NP("the", ("blue",), "cylinder")),))


def test_move_imperative_with_to():
    tree = parse("move the blue cylinder to the pantry")
    assert tree.verb == "move"
    assert dict(tree.args)["to"] == NP("the", (), "pantry")


def test_conjoined_goal_sentence():
    tree = parse("The goal is the blue cylinder is in the pantry, and the pantry is closed.")
    assert isinstance(tree, GoalStatement)
    c1, c2 = tree.clauses
    assert c1 == Clause(NP("the", ("blue",), "cylinder"), "rel", True,
                        prep="in", obj=NP("the", (), "pantry"))
    assert c2 == Clause(NP("the", (), "pantry"), "attr", True, attr="closed")


def test_param_reference_clause():
    tree = parse("the block is in 3")
    assert tree.clause == Clause(NP("the", (), "block"), "rel", True,
                                 prep="in", obj=Param(3))


def test_negative_existential_clause():
    tree = parse("the block is not in a location")
    cl = tree.clause
    assert not cl.positive and cl.prep == "in" and cl.obj == NP("a", (), "location")


def test_attribute_clause():
    assert parse("the block is blue").clause.attr == "blue"


def test_deictic_clause():
    cl = parse("this is blue").clause
    assert cl.subject == Deictic() and cl.attr == "blue"


def test_bare_np_reply():
    assert parse("a block") == TeachingReply(np=NP("a", (), "block"))


def test_bare_verb_reply():
    assert parse("move") == TeachingReply(verb="move")


def test_meta_replies():
    assert parse("finished") == MetaReply("finished")
    assert parse("stop") == MetaReply("stop")


def test_comparative_np():
    cl = parse("a block smaller than 1 is not in 2").clause
    assert cl.subject.compare == ("smaller than", Param(1))
    assert not cl.positive and cl.obj == Param(2)


def test_unknown_word_distinct_from_structural():
    with pytest.raises(UnknownWord) as exc:
        parse("store the frobulant cylinder")
    assert exc.value.token == "frobulant"
    with pytest.raises(ParseError):
        parse("the the the")


def test_unknown_first_token_is_new_verb():
    tree = parse("zorp the blue cylinder")
    assert isinstance(tree, Imperative) and tree.verb == "zorp"


def test_extra_nouns_from_scene():
    lex = Lexicon(extra_nouns={"cell1", "cell2"})
    tree = parse("the goal is the red block is in cell1", lex)
    assert tree.clauses[0].obj == NP(None, (), "cell1")
    with pytest.raises(UnknownWord):
        parse("the red block is in cell1")  # without the scene lexicon


def test_corpus_accepted_and_form_tagged():
    for form, utterance in corpus_lines():
        tree = parse(utterance)
        assert tree.form == form, utterance


def test_corpus_pretty_roundtrip():
    for _, utterance in corpus_lines():
        tree = parse(utterance)
        assert parse(pretty(tree)) == tree, utterance
