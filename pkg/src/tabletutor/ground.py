"""Referential comprehension: indexing verbs to maps and grounding noun
phrases to scene entities via word maps in semantic memory."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import concepts, grammar
from .memories import ConceptGraph, RetrievalFailure, SemanticMemory, WorkingMemory
from .predicates import Predicate, RelationDef, RelationVocabulary


class GroundingError(Exception):
    pass


class UnknownWord(GroundingError):
    """The word has no map in semantic memory (distinct from a lexicon gap)."""

    def __init__(self, word: str, cls: str):
        super().__init__(f"no map for {cls} {word!r}")
        self.word = word
        self.cls = cls


class UnknownVerb(GroundingError):
    def __init__(self, verb: str, roles: tuple[str, ...]):
        super().__init__(f"no task concept for verb {verb!r}")
        self.verb = verb
        self.roles = roles


class NoReferent(GroundingError):
    pass


class AmbiguousReferent(GroundingError):
    def __init__(self, np: grammar.NP, candidates: list[str]):
        super().__init__(f"{np.text()!r} matches {len(candidates)} entities")
        self.np = np
        self.candidates = candidates


@dataclass
class GroundedCommand:
    verb: str
    graph: ConceptGraph
    graph_id: int
    bindings: dict[str, str]  # role -> entity id
    tree: grammar.Imperative


def resolve_word(smem: SemanticMemory, word: str, cls: str) -> tuple[str, str]:
    """(kind, symbol) of a noun/adjective, from its word map."""
    try:
        g, binding, _ = smem.retrieve(concepts.word_cue(word, cls))
    except RetrievalFailure:
        raise UnknownWord(word, cls) from None
    node = g.nodes[binding["r"]]
    return node.attrs["kind"], node.attrs["symbol"]


def candidates_for(np: grammar.NP, wm: WorkingMemory,
                   smem: SemanticMemory) -> list[str]:
    assert wm.world is not None
    kind, symbol = resolve_word(smem, np.noun, "noun")
    if kind == "location-name":
        cands = [symbol] if wm.world.has_location(symbol) else []
    elif kind == "any-location":
        cands = sorted(l.name for l in wm.world.locations)
    elif kind == "shape":
        cands = sorted(o.id for o in wm.world.objects
                       if Predicate(symbol, (o.id,)) in wm.attributes)
    else:  # any-object
        cands = sorted(o.id for o in wm.world.objects)
    for adj in np.adjectives:
        _, sym = resolve_word(smem, adj, "adjective")
        cands = [c for c in cands if Predicate(sym, (c,)) in wm.attributes]
    return cands


def ground_np(np: grammar.NP, wm: WorkingMemory,
              smem: SemanticMemory) -> str:
    cands = candidates_for(np, wm, smem)
    if not cands:
        raise NoReferent(f"nothing matches {np.text()!r}")
    if len(cands) > 1:
        raise AmbiguousReferent(np, cands)
    return cands[0]


def ground_term(term: grammar.Term, wm: WorkingMemory, smem: SemanticMemory,
                pointing: Optional[str] = None,
                overrides: Optional[dict[str, str]] = None) -> str:
    if isinstance(term, grammar.Deictic):
        if pointing is None:
            raise NoReferent("'this' used without pointing")
        return pointing
    if isinstance(term, grammar.Param):
        raise GroundingError("parameter references only ground inside problem specs")
    if overrides and term.text() in overrides:
        return overrides[term.text()]
    return ground_np(term, wm, smem)


def index_verb(tree: grammar.Imperative, wm: WorkingMemory,
               smem: SemanticMemory, pointing: Optional[str] = None,
               overrides: Optional[dict[str, str]] = None) -> GroundedCommand:
    roles = tuple(role for role, _ in tree.args)
    try:
        graph, _, gid = smem.retrieve(concepts.verb_cue(tree.verb, roles))
    except RetrievalFailure:
        raise UnknownVerb(tree.verb, roles) from None
    bindings = {role: ground_term(term, wm, smem, pointing, overrides)
                for role, term in tree.args}
    return GroundedCommand(tree.verb, graph, gid, bindings, tree)


def learn_word(smem: SemanticMemory, word: str, cls: str,
               symbol: str, kind: str) -> int:
    """Store or update a word map; immediately usable for grounding."""
    graph = (concepts.relation_map(word, frozenset(symbol.split("+")))
             if cls == "preposition"
             else concepts.word_map(word, cls, symbol, kind))
    try:
        _, _, gid = smem.retrieve(concepts.word_cue(word, cls))
        smem.replace(gid, graph)
        return gid
    except RetrievalFailure:
        return smem.store(graph)


def learn_relation(smem: SemanticMemory, word: str,
                   primitives: frozenset[str],
                   arg_kinds: tuple[str, str] = ("any", "any")) -> int:
    graph = concepts.relation_map(word, primitives, arg_kinds)
    try:
        _, _, gid = smem.retrieve(concepts.word_cue(word, "preposition"))
        smem.replace(gid, graph)
        return gid
    except RetrievalFailure:
        return smem.store(graph)


def relation_vocabulary(smem: SemanticMemory) -> RelationVocabulary:
    """Relation vocabulary = all relation maps currently in semantic memory."""
    vocab = RelationVocabulary()
    for entry in smem.graphs():
        for node in entry.graph.nodes_of_type("relation"):
            vocab.add(RelationDef(
                node.attrs["name"],
                frozenset(node.attrs["primitives"]),
                (node.attrs.get("kind_a", "any"), node.attrs.get("kind_b", "any"))))
    return vocab
