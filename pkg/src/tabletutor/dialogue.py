"""Task-oriented interaction state: the segment stack, impasse records,
question templates, and the wire message schema."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

PURPOSES = {
    "perform-task", "acquire-goal", "acquire-action", "acquire-word",
    "acquire-relation", "acquire-problem-spec", "disambiguate",
}

IMPASSE_KINDS = {
    "unknown-verb", "unknown-goal", "no-behavior", "unknown-word",
    "unresolvable-re", "unknown-relation",
}


class DialogueError(Exception):
    pass


class PopUnsatisfied(DialogueError):
    pass


class UnexpectedReplyForm(DialogueError):
    pass


@dataclass(frozen=True)
class Message:
    speaker: str  # "expert" | "learner"
    text: str
    pointing: Optional[str] = None
    seq: int = 0

    def to_wire(self) -> dict:
        return {"speaker": self.speaker, "text": self.text,
                "pointing": self.pointing, "seq": self.seq}


@dataclass
class Segment:
    purpose: str
    context: dict[str, Any] = field(default_factory=dict)
    originator: str = "learner"
    satisfied: bool = False

    def __post_init__(self):
        if self.purpose not in PURPOSES:
            raise DialogueError(f"unknown purpose {self.purpose!r}")


class InteractionStack:
    def __init__(self) -> None:
        # the root segment is the standing directive to serve the expert
        self.segments: list[Segment] = [
            Segment("perform-task", originator="expert", satisfied=True)]

    @property
    def top(self) -> Segment:
        return self.segments[-1]

    @property
    def depth(self) -> int:
        return len(self.segments)

    def push(self, purpose: str, context: Optional[dict] = None,
             originator: str = "learner") -> Segment:
        seg = Segment(purpose, context or {}, originator)
        self.segments.append(seg)
        return seg

    def pop(self) -> Segment:
        if self.depth == 1:
            raise DialogueError("cannot pop the root segment")
        if not self.top.satisfied:
            raise PopUnsatisfied(f"purpose {self.top.purpose!r} not satisfied")
        return self.segments.pop()

    def reset(self) -> None:
        del self.segments[1:]


@dataclass(frozen=True)
class ImpasseRecord:
    kind: str
    summary: dict[str, Any]

    def __post_init__(self):
        if self.kind not in IMPASSE_KINDS:
            raise DialogueError(f"unknown impasse kind {self.kind!r}")


QUESTION_TEMPLATES = {
    "unknown-goal": "What is the goal of {verb}?",
    "no-behavior": "What action should I take?",
    "unknown-word": "What does {word} mean?",
    "unknown-relation": "What does {word} mean? Please show me an example.",
    "unresolvable-re": "Which {noun} do you mean?",
    "unknown-verb": "What should I do to {verb}?",
}

# the problem-spec protocol wording is fixed
SPEC_QUESTIONS = {
    "verb": "What is the name of a verb associated with this action?",
    "parameter": "What is a parameter for this action? (or finished if done)",
    "condition": "What is a condition for this parameter?(or finished if done)",
    "goal": "What is a goal of the problem? (or finished if done)",
    "action": "Is there another action? (or finished if done)",
}


def generate_question(impasse: ImpasseRecord) -> str:
    """Deterministic question text per impasse kind."""
    return QUESTION_TEMPLATES[impasse.kind].format(**impasse.summary)
