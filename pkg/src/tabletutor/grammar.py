"""Closed grammar for the expert-learner dialogue.

The syntactic lexicon (word categories) is fixed; whether a word can be
*grounded* is a separate question answered by word maps in semantic memory.
Covered forms: imperatives, goal statements with "and"-conjoined clauses,
teaching replies (bare noun phrases, copular clauses, bare verbs), and meta
replies. Numbers parse as parameter references.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

DETERMINERS = {"the", "a", "an"}
COPULA = {"is"}
ADJECTIVES = {"red", "blue", "green", "yellow", "small", "large"}
STATE_ADJECTIVES = {"open", "closed", "on", "off", "empty"}
NOUNS = {
    "cylinder", "triangle", "cube", "sphere",
    "block", "object", "disk", "location",
    "pantry", "garbage", "table", "stove", "goal",
}
PREPOSITIONS = {"in", "on", "to", "next to", "right of", "left of",
                "above", "smaller than"}
VERBS = {"open", "close", "pick up", "put", "turn on", "turn off",
         "move", "shift", "store"}
META = {"finished", "stop", "yes", "no"}
MULTIWORD = [("pick", "up"), ("turn", "on"), ("turn", "off"),
             ("next", "to"), ("right", "of"), ("left", "of"),
             ("smaller", "than")]


class ParseError(Exception):
    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at token {position})")
        self.position = position


class UnknownWord(ParseError):
    def __init__(self, token: str, position: int = 0):
        ParseError.__init__(self, f"unknown word {token!r}", position)
        self.token = token


@dataclass(frozen=True)
class NP:
    det: Optional[str]
    adjectives: tuple[str, ...]
    noun: str
    compare: Optional[tuple[str, "Term"]] = None  # ("smaller than", term)

    def text(self) -> str:
        words = ([self.det] if self.det else []) + list(self.adjectives) + [self.noun]
        s = " ".join(words)
        if self.compare:
            s += f" {self.compare[0]} {term_text(self.compare[1])}"
        return s


@dataclass(frozen=True)
class Param:
    n: int


@dataclass(frozen=True)
class Deictic:
    """"this" plus pointing."""


Term = Union[NP, Param, Deictic]


def term_text(t: Term) -> str:
    if isinstance(t, NP):
        return t.text()
    if isinstance(t, Param):
        return str(t.n)
    return "this"


@dataclass(frozen=True)
class Clause:
    subject: Term
    kind: str  # "attr" | "rel"
    positive: bool = True
    attr: Optional[str] = None
    prep: Optional[str] = None
    obj: Optional[Term] = None

    def text(self) -> str:
        s = f"{term_text(self.subject)} is"
        if not self.positive:
            s += " not"
        if self.kind == "attr":
            return f"{s} {self.attr}"
        return f"{s} {self.prep.replace('-', ' ')} {term_text(self.obj)}"


@dataclass(frozen=True)
class Imperative:
    verb: str
    args: tuple[tuple[str, Term], ...]  # (role, term); role = direct-object or prep

    form = "imperative"

    def text(self) -> str:
        s = self.verb
        for role, term in self.args:
            if role == "direct-object":
                s += f" {term_text(term)}"
            else:
                s += f" {role} {term_text(term)}"
        return s


@dataclass(frozen=True)
class GoalStatement:
    clauses: tuple[Clause, ...]

    form = "goal-statement"

    def text(self) -> str:
        return "the goal is " + " and ".join(c.text() for c in self.clauses)


@dataclass(frozen=True)
class TeachingReply:
    """Bare NP, copular clause, or bare verb naming."""

    np: Optional[NP] = None
    clause: Optional[Clause] = None
    verb: Optional[str] = None

    form = "teaching-reply"

    def text(self) -> str:
        if self.np is not None:
            return self.np.text()
        if self.clause is not None:
            return self.clause.text()
        return self.verb


@dataclass(frozen=True)
class MetaReply:
    word: str

    form = "meta-reply"

    def text(self) -> str:
        return self.word


ParseTree = Union[Imperative, GoalStatement, TeachingReply, MetaReply]


@dataclass
class Lexicon:
    """Static categories plus scene-dependent nouns (puzzle cell names etc.)."""

    extra_nouns: set[str] = field(default_factory=set)
    extra_verbs: set[str] = field(default_factory=set)

    def is_noun(self, tok: str) -> bool:
        return tok in NOUNS or tok in self.extra_nouns

    def is_verb(self, tok: str) -> bool:
        return tok in VERBS or tok in self.extra_verbs

    def known(self, tok: str) -> bool:
        return (tok in DETERMINERS or tok in COPULA or tok in ADJECTIVES
                or tok in STATE_ADJECTIVES or tok in PREPOSITIONS
                or tok in META or tok in {"and", "not", "this"}
                or self.is_noun(tok) or self.is_verb(tok) or tok.isdigit())


def tokenize(text: str) -> list[str]:
    toks = text.lower().replace(",", " ").replace(".", " ").replace("?", " ").split()
    merged: list[str] = []
    i = 0
    while i < len(toks):
        if i + 1 < len(toks) and (toks[i], toks[i + 1]) in MULTIWORD:
            merged.append(f"{toks[i]} {toks[i + 1]}")
            i += 2
        else:
            merged.append(toks[i])
            i += 1
    return merged


class _Parser:
    def __init__(self, tokens: list[str], lexicon: Lexicon):
        self.toks = tokens
        self.pos = 0
        self.lex = lexicon

    def peek(self) -> Optional[str]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of utterance", self.pos)
        self.pos += 1
        return tok

    def done(self) -> bool:
        return self.pos >= len(self.toks)

    def expect_done(self, tree: ParseTree) -> ParseTree:
        if not self.done():
            raise ParseError(f"trailing tokens {self.toks[self.pos:]}", self.pos)
        return tree

    # -- terms ------------------------------------------------------------

    def term(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise ParseError("expected a noun phrase", self.pos)
        if tok == "this":
            self.take()
            return Deictic()
        if tok.isdigit():
            self.take()
            return Param(int(tok))
        return self.np()

    def np(self) -> NP:
        det = None
        if self.peek() in DETERMINERS:
            det = self.take()
            if det == "an":
                det = "a"
        adjs: list[str] = []
        while self.peek() in ADJECTIVES:
            adjs.append(self.take())
        tok = self.peek()
        if tok is None:
            raise ParseError("expected a head noun", self.pos)
        if not self.lex.is_noun(tok):
            if not self.lex.known(tok):
                raise UnknownWord(tok, self.pos)
            raise ParseError(f"expected a noun, got {tok!r}", self.pos)
        noun = self.take()
        compare = None
        if self.peek() == "smaller than":
            op = self.take()
            compare = (op, self.term())
        return NP(det, tuple(adjs), noun, compare)

    # -- clauses ----------------------------------------------------------

    def clause(self) -> Clause:
        subject = self.term()
        if self.peek() not in COPULA:
            raise ParseError(f"expected 'is', got {self.peek()!r}", self.pos)
        self.take()
        positive = True
        if self.peek() == "not":
            self.take()
            positive = False
        tok = self.peek()
        nxt = self.toks[self.pos + 1] if self.pos + 1 < len(self.toks) else None
        if tok in STATE_ADJECTIVES and nxt in (None, "and"):
            return Clause(subject, "attr", positive, attr=self.take())
        if tok in PREPOSITIONS:
            # multiword preps are stored hyphenated, matching relation names
            prep = self.take().replace(" ", "-")
            obj = self.term()
            return Clause(subject, "rel", positive, prep=prep, obj=obj)
        if tok in ADJECTIVES or tok in STATE_ADJECTIVES:
            return Clause(subject, "attr", positive, attr=self.take())
        if tok in DETERMINERS:
            # "this is a cylinder" - identity teaching, treated as attribute
            np = self.np()
            if np.adjectives:
                raise ParseError("expected a bare category noun", self.pos)
            return Clause(subject, "attr", positive, attr=np.noun)
        if tok is None:
            raise ParseError("expected a predicate", self.pos)
        if not self.lex.known(tok):
            raise UnknownWord(tok, self.pos)
        if self.lex.is_noun(tok):
            return Clause(subject, "attr", positive, attr=self.take())
        raise ParseError(f"cannot use {tok!r} as a predicate", self.pos)

    # -- top level --------------------------------------------------------

    def parse(self) -> ParseTree:
        if self.toks[:3] == ["the", "goal", "is"]:
            self.pos = 3
            clauses = [self.clause()]
            while self.peek() == "and":
                self.take()
                clauses.append(self.clause())
            return self.expect_done(GoalStatement(tuple(clauses)))

        if len(self.toks) == 1 and self.toks[0] in META:
            self.take()
            return MetaReply(self.toks[0])

        first = self.peek()
        assert first is not None

        # clause or bare-NP teaching replies start with a determiner/number/this
        if first in DETERMINERS or first.isdigit() or first == "this":
            mark = self.pos
            try:
                cl = self.clause()
                return self.expect_done(TeachingReply(clause=cl))
            except ParseError as exc:
                if isinstance(exc, UnknownWord):
                    raise
                self.pos = mark
            np = self.np()
            return self.expect_done(TeachingReply(np=np))

        # otherwise an imperative (or a bare verb naming reply)
        verb = self.take()
        if not self.lex.is_verb(verb) and self.lex.known(verb):
            raise ParseError(f"cannot start an utterance with {verb!r}", self.pos)
        if self.done():
            return TeachingReply(verb=verb)
        args: list[tuple[str, Term]] = []
        if self.peek() not in PREPOSITIONS:
            args.append(("direct-object", self.term()))
        while self.peek() in PREPOSITIONS:
            prep = self.take()
            args.append((prep, self.term()))
        return self.expect_done(Imperative(verb, tuple(args)))


def parse(text: str, lexicon: Optional[Lexicon] = None) -> ParseTree:
    lexicon = lexicon or Lexicon()
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty utterance")
    return _Parser(tokens, lexicon).parse()


def pretty(tree: ParseTree) -> str:
    return tree.text()
