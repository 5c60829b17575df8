"""Scripted lessons: drive a session from a declarative script of expert
commands and ordered reply rules, with post-conditions.

Script format (line oriented, '#' comments):

    preset O+S
    scene default                 # or: begin-scene ... end-scene (scene text)
    > store the blue cylinder     # expert command; '@ entity' adds pointing
    ? goal of store :: the goal is the cylinder is in the pantry
    ? What action :: open the pantry
    expect in obj-1 pantry        # predicate over the final world
    expect not open pantry

Reply rules are consumed in order: when the learner asks a question, the
first unconsumed rule whose pattern is a substring of the question answers
it. A question with no matching rule aborts the lesson.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .kernel import Session
from .memories import ConceptGraph
from .predicates import Predicate
from .rules import BehaviorRule
from .world import WorldState, default_scene, parse_scene


class LessonError(Exception):
    pass


class UnmatchedQuestion(LessonError):
    def __init__(self, question: str):
        super().__init__(f"no reply rule matches question: {question!r}")
        self.question = question


class ExpectationFailed(LessonError):
    pass


@dataclass
class ReplyRule:
    pattern: str
    text: str
    pointing: Optional[str] = None
    used: bool = False


@dataclass
class LessonScript:
    preset: str = "O+S"
    scene_text: Optional[str] = None
    commands: list[tuple[str, str, Optional[str]]] = field(default_factory=list)
    replies: list[ReplyRule] = field(default_factory=list)
    expectations: list[Predicate] = field(default_factory=list)

    def scene(self) -> WorldState:
        if self.scene_text is None:
            return default_scene()
        return parse_scene(self.scene_text)


def _split_pointing(text: str) -> tuple[str, Optional[str]]:
    if " @ " in text:
        text, entity = text.rsplit(" @ ", 1)
        return text.strip(), entity.strip()
    return text.strip(), None


def parse_lesson(source: str) -> LessonScript:
    script = LessonScript()
    lines = source.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i].split("#", 1)[0].rstrip()
        i += 1
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("preset "):
            script.preset = stripped.split(None, 1)[1]
        elif stripped == "scene default":
            script.scene_text = None
        elif stripped == "begin-scene":
            block = []
            while i < len(lines) and lines[i].strip() != "end-scene":
                block.append(lines[i])
                i += 1
            i += 1
            script.scene_text = "\n".join(block)
        elif stripped.startswith("> "):
            text, pointing = _split_pointing(stripped[2:])
            script.commands.append(("say", text, pointing))
        elif stripped.startswith("spec "):
            script.commands.append(("spec", stripped.split(None, 1)[1], None))
        elif stripped.startswith("? "):
            pattern, reply = stripped[2:].split("::", 1)
            text, pointing = _split_pointing(reply)
            script.replies.append(ReplyRule(pattern.strip(), text, pointing))
        elif stripped.startswith("expect "):
            parts = stripped.split()[1:]
            positive = True
            if parts[0] == "not":
                positive = False
                parts = parts[1:]
            script.expectations.append(
                Predicate(parts[0], tuple(parts[1:]), positive))
        else:
            raise LessonError(f"unknown lesson directive: {stripped!r}")
    return script


@dataclass
class LessonResult:
    session: Session
    script: LessonScript

    @property
    def metrics(self):
        return self.session.metrics


def run_lesson(source: str | Path,
               knowledge: Optional[tuple[list[ConceptGraph],
                                         list[BehaviorRule]]] = None,
               session: Optional[Session] = None) -> LessonResult:
    """Run a lesson script; `knowledge` overrides the preset (the O+S+T
    case), `session` continues an existing one."""
    if isinstance(source, Path):
        source = source.read_text()
    script = parse_lesson(source)
    if session is None:
        session = Session(script.scene(), preset=script.preset,
                          knowledge=knowledge)
    for kind, text, pointing in script.commands:
        if kind == "spec":
            session.begin_spec(text)
        else:
            session.submit(text, pointing)
        guard = 0
        while session.awaiting_reply:
            question = session.pending.text
            rule = next((r for r in script.replies
                         if not r.used and r.pattern in question), None)
            if rule is None:
                raise UnmatchedQuestion(question)
            rule.used = True
            session.submit(rule.text, rule.pointing)
            guard += 1
            if guard > 200:
                raise LessonError("reply loop did not terminate")
    beliefs = session.beliefs()
    for p in script.expectations:
        holds = p in beliefs if p.positive else p.negated() not in beliefs
        if not holds:
            raise ExpectationFailed(f"expected {p} after lesson")
    return LessonResult(session, script)
