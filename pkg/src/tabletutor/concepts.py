"""Task knowledge representation on top of concept graphs.

A verb map ties a lexical node (the verb and its argument roles) to an
operator handle; a full task concept network adds a goal subgraph (predicate
nodes over shared argument slots and constants) and a problem-space node
listing action references. Word maps tie nouns/adjectives/prepositions to
their grounded referents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .memories import ConceptGraph, Cue

# argument is either a shared slot (by role) or a constant entity
Arg = tuple[str, str]  # ("slot", role) | ("const", entity-name)


@dataclass(frozen=True)
class GoalPred:
    name: str
    args: tuple[Arg, ...]
    positive: bool = True


@dataclass(frozen=True)
class ActionRef:
    verb: str
    args: tuple[Arg, ...]
    relation: Optional[str] = None
    order: int = 0

    def __str__(self) -> str:
        parts = ([self.relation] if self.relation else []) + \
            [a[1] if a[0] == "const" else f"[{a[1]}]" for a in self.args]
        return f"{self.verb}({', '.join(parts)})"


def new_verb_map(verb: str, roles: Sequence[str],
                 primitive: Optional[str] = None) -> ConceptGraph:
    g = ConceptGraph()
    g.add_node("M", "map")
    g.add_node("L", "lexical", word=verb, cls="verb")
    op_attrs = {"name": f"op-{verb}"}
    if primitive:
        op_attrs["primitive"] = primitive
    g.add_node("OP", "operator-handle", **op_attrs)
    g.add_edge("M", "lexical", "L")
    g.add_edge("M", "operator", "OP")
    for role in roles:
        nid = f"S-{role}"
        g.add_node(nid, "object-slot", role=role)
        g.add_edge("L", role, nid)
        g.add_edge("OP", "argument", nid)
    return g


def _arg_node(g: ConceptGraph, arg: Arg) -> str:
    kind, name = arg
    if kind == "slot":
        nid = f"S-{name}"
        if nid not in g.nodes:
            raise KeyError(f"no slot for role {name!r}")
        return nid
    nid = f"C-{name}"
    if nid not in g.nodes:
        g.add_node(nid, "object-slot", constant=name)
    return nid


def add_goal_predicate(g: ConceptGraph, name: str, args: Sequence[Arg],
                       positive: bool = True) -> None:
    if "G" not in g.nodes:
        g.add_node("G", "goal")
        g.add_edge("M", "goal", "G")
    idx = len(g.out("G", "predicate"))
    pid = f"P{idx}"
    g.add_node(pid, "predicate", name=name, positive="true" if positive else "false")
    g.add_edge("G", "predicate", pid)
    for i, arg in enumerate(args):
        g.add_edge(pid, f"arg{i}", _arg_node(g, arg))


def add_ps_action(g: ConceptGraph, verb: str, args: Sequence[Arg],
                  relation: Optional[str] = None) -> None:
    if "PS" not in g.nodes:
        g.add_node("PS", "problem-space")
        g.add_edge("M", "problem-space", "PS")
    existing = [ref for ref in ps_actions(g)]
    candidate = ActionRef(verb, tuple(args), relation, len(existing))
    if any(ActionRef(r.verb, r.args, r.relation, 0) ==
           ActionRef(candidate.verb, candidate.args, candidate.relation, 0)
           for r in existing):
        return
    aid = f"A{len(existing)}"
    attrs = {"verb": verb, "order": len(existing)}
    if relation:
        attrs["relation"] = relation
    g.add_node(aid, "action-ref", **attrs)
    g.add_edge("PS", "action", aid)
    for i, arg in enumerate(args):
        g.add_edge(aid, f"arg{i}", _arg_node(g, arg))


def _node_arg(g: ConceptGraph, nid: str) -> Arg:
    node = g.nodes[nid]
    if "constant" in node.attrs:
        return ("const", node.attrs["constant"])
    return ("slot", node.attrs["role"])


def _ordered_args(g: ConceptGraph, nid: str) -> tuple[Arg, ...]:
    pairs = [(l, d) for s, l, d in g.edges if s == nid and l.startswith("arg")]
    pairs.sort(key=lambda p: int(p[0][3:]))
    return tuple(_node_arg(g, d) for _, d in pairs)


def verb_of(g: ConceptGraph) -> str:
    (lex,) = g.out("M", "lexical")
    return g.nodes[lex].attrs["word"]


def roles_of(g: ConceptGraph) -> list[str]:
    (lex,) = g.out("M", "lexical")
    return [l for s, l, d in g.edges
            if s == lex and g.nodes[d].type == "object-slot"]


def primitive_of(g: ConceptGraph) -> Optional[str]:
    (op,) = g.out("M", "operator")
    return g.nodes[op].attrs.get("primitive")


def goal_predicates(g: ConceptGraph) -> list[GoalPred]:
    if "G" not in g.nodes:
        return []
    preds = []
    for pid in g.out("G", "predicate"):
        node = g.nodes[pid]
        preds.append(GoalPred(node.attrs["name"], _ordered_args(g, pid),
                              node.attrs["positive"] == "true"))
    return preds


def has_goal(g: ConceptGraph) -> bool:
    return bool(goal_predicates(g))


def ps_actions(g: ConceptGraph) -> list[ActionRef]:
    if "PS" not in g.nodes:
        return []
    refs = []
    for aid in g.out("PS", "action"):
        node = g.nodes[aid]
        refs.append(ActionRef(node.attrs["verb"], _ordered_args(g, aid),
                              node.attrs.get("relation"), int(node.attrs["order"])))
    return sorted(refs, key=lambda r: r.order)


def verb_cue(verb: str, roles: Sequence[str] = ()) -> Cue:
    nodes = {"m": {"type": "map"},
             "l": {"type": "lexical", "word": verb, "cls": "verb"},
             "op": {"type": "operator-handle"}}
    edges = [("m", "lexical", "l"), ("m", "operator", "op")]
    for role in roles:
        nodes[f"s-{role}"] = {"type": "object-slot", "role": role}
        edges.append(("l", role, f"s-{role}"))
    return Cue(nodes, edges)


# ---------------------------------------------------------------------------
# word maps


def word_map(word: str, cls: str, symbol: str, kind: str) -> ConceptGraph:
    """Noun/adjective map: word -> perceptual symbol or entity category.

    kind in {attribute, shape, category, location-name}.
    """
    g = ConceptGraph()
    g.add_node("L", "lexical", word=word, cls=cls)
    g.add_node("R", "predicate", symbol=symbol, kind=kind)
    g.add_edge("L", "denotes", "R")
    return g


def relation_map(word: str, primitives: frozenset[str],
                 arg_kinds: tuple[str, str] = ("any", "any")) -> ConceptGraph:
    g = ConceptGraph()
    g.add_node("L", "lexical", word=word, cls="preposition")
    g.add_node("R", "relation", name=word, primitives=primitives,
               kind_a=arg_kinds[0], kind_b=arg_kinds[1])
    g.add_edge("L", "denotes", "R")
    return g


def word_cue(word: str, cls: str) -> Cue:
    return Cue({"l": {"type": "lexical", "word": word, "cls": cls},
                "r": {}},
               [("l", "denotes", "r")])


def primitive_verb_maps() -> list[ConceptGraph]:
    """The primitive action vocabulary every learner starts with."""
    return [
        new_verb_map("open", ["direct-object"], primitive="open"),
        new_verb_map("close", ["direct-object"], primitive="close"),
        new_verb_map("turn on", ["direct-object"], primitive="turn-on"),
        new_verb_map("turn off", ["direct-object"], primitive="turn-off"),
        new_verb_map("pick up", ["direct-object"], primitive="pick-up"),
        new_verb_map("put", ["direct-object", "in"], primitive="put-down"),
    ]
