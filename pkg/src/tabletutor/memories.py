"""The three memory analogs.

Semantic memory holds typed relational graphs ("concept graphs") retrieved by
cue patterns; ties among full matches are broken by frequency + recency.
Episodic memory is an append-only, recency-biased snapshot store. Working
memory is the per-cycle belief structure the kernel reads and writes.
"""

from __future__ import annotations

import itertools
import shlex
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

from .predicates import Predicate
from .world import WorldState

NODE_TYPES = {
    "lexical", "map", "operator-handle", "object-slot", "goal",
    "predicate", "relation", "problem-space", "action-ref",
}

RECENCY_WEIGHT = 0.5


class MemoryError_(Exception):
    pass


class MalformedGraph(MemoryError_):
    pass


class RetrievalFailure(MemoryError_):
    """No stored item matches every cue constant."""


class IndexGap(MemoryError_):
    pass


@dataclass
class Node:
    id: str
    type: str
    attrs: dict[str, Any] = field(default_factory=dict)


class ConceptGraph:
    """Small labeled digraph with typed, attributed nodes."""

    def __init__(self) -> None:
        self.nodes: dict[str, Node] = {}
        self.edges: list[tuple[str, str, str]] = []

    def add_node(self, nid: str, ntype: str, **attrs) -> Node:
        if ntype not in NODE_TYPES:
            raise MalformedGraph(f"unknown node type {ntype!r}")
        node = Node(nid, ntype, dict(attrs))
        self.nodes[nid] = node
        return node

    def add_edge(self, src: str, label: str, dst: str) -> None:
        if src not in self.nodes or dst not in self.nodes:
            raise MalformedGraph(f"edge endpoints missing: {src} -{label}-> {dst}")
        self.edges.append((src, label, dst))

    def out(self, nid: str, label: Optional[str] = None) -> list[str]:
        return [d for s, l, d in self.edges
                if s == nid and (label is None or l == label)]

    def nodes_of_type(self, ntype: str) -> list[Node]:
        return [n for n in self.nodes.values() if n.type == ntype]

    def validate(self) -> None:
        for s, l, d in self.edges:
            if s not in self.nodes or d not in self.nodes:
                raise MalformedGraph("dangling edge")
        for m in self.nodes_of_type("map"):
            if len(self.out(m.id, "lexical")) != 1:
                raise MalformedGraph(f"map {m.id} must link exactly one lexical node")
            if len(self.out(m.id, "operator")) != 1:
                raise MalformedGraph(f"map {m.id} must link exactly one operator-handle")

    def copy(self) -> "ConceptGraph":
        g = ConceptGraph()
        for n in self.nodes.values():
            g.nodes[n.id] = Node(n.id, n.type, dict(n.attrs))
        g.edges = list(self.edges)
        return g

    def isomorphic_to(self, other: "ConceptGraph") -> bool:
        """Structural equality up to node renaming (graphs here are tiny)."""
        if len(self.nodes) != len(other.nodes) or len(self.edges) != len(other.edges):
            return False
        mine = sorted(self.nodes)
        theirs = sorted(other.nodes)
        by_sig: dict[tuple, list[str]] = {}
        for nid in theirs:
            n = other.nodes[nid]
            by_sig.setdefault((n.type, tuple(sorted(n.attrs.items()))), []).append(nid)

        def backtrack(i: int, mapping: dict[str, str]) -> bool:
            if i == len(mine):
                edges = {(mapping[s], l, mapping[d]) for s, l, d in self.edges}
                return edges == set(map(tuple, other.edges))
            n = self.nodes[mine[i]]
            for cand in by_sig.get((n.type, tuple(sorted(n.attrs.items()))), []):
                if cand in mapping.values():
                    continue
                mapping[mine[i]] = cand
                if backtrack(i + 1, mapping):
                    return True
                del mapping[mine[i]]
            return False

        return backtrack(0, {})


@dataclass
class Cue:
    """Pattern graph: variable nodes with attribute constraints plus edges.

    nodes: var -> constraints ({"type": ..., attr: value}); a constraint dict
    with only "type" (or empty) is a free variable in that position.
    """

    nodes: dict[str, dict[str, Any]]
    edges: list[tuple[str, str, str]] = field(default_factory=list)

    def __post_init__(self):
        if not any(set(c) - {"type"} for c in self.nodes.values()):
            raise MemoryError_("cue needs at least one constant")

    def match(self, graph: ConceptGraph) -> Optional[dict[str, str]]:
        """First consistent assignment of variables to graph nodes, or None."""
        variables = sorted(self.nodes)

        def ok(var: str, nid: str) -> bool:
            node = graph.nodes[nid]
            for k, v in self.nodes[var].items():
                if k == "type":
                    if node.type != v:
                        return False
                elif node.attrs.get(k) != v:
                    return False
            return True

        edge_set = set(map(tuple, graph.edges))

        def backtrack(i: int, binding: dict[str, str]) -> Optional[dict[str, str]]:
            if i == len(variables):
                for s, l, d in self.edges:
                    if (binding[s], l, binding[d]) not in edge_set:
                        return None
                return dict(binding)
            var = variables[i]
            for nid in sorted(graph.nodes):
                if nid in binding.values():
                    continue
                if ok(var, nid):
                    binding[var] = nid
                    res = backtrack(i + 1, binding)
                    if res is not None:
                        return res
                    del binding[var]
            return None

        return backtrack(0, {})


@dataclass
class StoredGraph:
    id: int
    graph: ConceptGraph
    recency: int
    frequency: int = 0


class SemanticMemory:
    def __init__(self) -> None:
        self._store: dict[int, StoredGraph] = {}
        self._clock = itertools.count(1)
        self._next_id = itertools.count(1)

    def graphs(self) -> list[StoredGraph]:
        return list(self._store.values())

    def store(self, graph: ConceptGraph) -> int:
        graph.validate()
        gid = next(self._next_id)
        self._store[gid] = StoredGraph(gid, graph, recency=next(self._clock))
        return gid

    def replace(self, gid: int, graph: ConceptGraph) -> None:
        graph.validate()
        entry = self._store[gid]
        entry.graph = graph
        entry.recency = next(self._clock)

    def retrieve(self, cue: Cue) -> tuple[ConceptGraph, dict[str, str], int]:
        """Best full match; bumps frequency and recency. Returns
        (graph, variable binding, graph id)."""
        matches: list[tuple[StoredGraph, dict[str, str]]] = []
        for entry in self._store.values():
            binding = cue.match(entry.graph)
            if binding is not None:
                matches.append((entry, binding))
        if not matches:
            raise RetrievalFailure(f"no graph matches cue")
        ranked = sorted(
            (e for e, _ in matches),
            key=lambda e: (e.recency,))
        rank = {e.id: i + 1 for i, e in enumerate(ranked)}
        best, binding = max(
            matches,
            key=lambda m: (m[0].frequency + RECENCY_WEIGHT * rank[m[0].id], -m[0].id))
        best.frequency += 1
        best.recency = next(self._clock)
        return best.graph, binding, best.id


@dataclass(frozen=True)
class Event:
    kind: str  # action | utterance | task-begin | task-end
    detail: str = ""


@dataclass(frozen=True)
class Episode:
    index: int
    world: WorldState
    predicates: frozenset[Predicate]
    event: Event


class EpisodicMemory:
    def __init__(self) -> None:
        self.episodes: list[Episode] = []

    def record(self, ep: Episode) -> None:
        expected = self.episodes[-1].index + 1 if self.episodes else ep.index
        if self.episodes and ep.index != expected:
            raise IndexGap(f"episode index {ep.index}, expected {expected}")
        self.episodes.append(ep)

    def retrieve(self, cue_predicates: frozenset[Predicate] = frozenset(),
                 event_kind: Optional[str] = None,
                 event_detail: Optional[str] = None) -> Episode:
        """Most recent episode whose snapshot/event covers the cue."""
        for ep in reversed(self.episodes):
            if not cue_predicates <= ep.predicates:
                continue
            if event_kind is not None and ep.event.kind != event_kind:
                continue
            if event_detail is not None and ep.event.detail != event_detail:
                continue
            return ep
        raise RetrievalFailure("no episode matches cue")


@dataclass
class WorkingMemory:
    """Per-cycle belief state: current predicates plus retrieval buffers."""

    world: Optional[WorldState] = None
    predicates: frozenset[Predicate] = frozenset()
    attributes: frozenset[Predicate] = frozenset()
    smem_buffer: Optional[ConceptGraph] = None
    epmem_buffer: Optional[Episode] = None


# ---------------------------------------------------------------------------
# line-oriented graph serialization (preset and lesson files)


def graph_to_lines(graph: ConceptGraph, gid: str = "g") -> list[str]:
    lines = [f"graph {gid}"]
    for nid in sorted(graph.nodes):
        n = graph.nodes[nid]
        attrs = " ".join(f"{k}={_enc(v)}" for k, v in sorted(n.attrs.items()))
        lines.append(f"  node {nid} {n.type}" + (f" {attrs}" if attrs else ""))
    for s, l, d in graph.edges:
        lines.append(f"  edge {s} {l} {d}")
    lines.append("end")
    return lines


def graphs_from_lines(lines: Iterator[str] | list[str]) -> list[ConceptGraph]:
    graphs: list[ConceptGraph] = []
    current: Optional[ConceptGraph] = None
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = shlex.split(line)
        if parts[0] == "graph":
            current = ConceptGraph()
        elif parts[0] == "end":
            if current is None:
                raise MalformedGraph("end without graph")
            current.validate()
            graphs.append(current)
            current = None
        elif parts[0] == "node":
            assert current is not None
            attrs = dict(_dec(kv) for kv in parts[3:])
            current.add_node(parts[1], parts[2], **attrs)
        elif parts[0] == "edge":
            assert current is not None
            current.add_edge(parts[1], parts[2], parts[3])
        else:
            raise MalformedGraph(f"unknown directive {parts[0]!r}")
    if current is not None:
        raise MalformedGraph("unterminated graph")
    return graphs


def _enc(v: Any) -> str:
    if isinstance(v, frozenset):
        return "{" + ",".join(sorted(v)) + "}"
    if isinstance(v, tuple):
        return "(" + ",".join(str(x) for x in v) + ")"
    s = str(v)
    return shlex.quote(s) if " " in s else s


def _dec(kv: str) -> tuple[str, Any]:
    k, v = kv.split("=", 1)
    if v.startswith("{") and v.endswith("}"):
        inner = v[1:-1]
        return k, frozenset(inner.split(",")) if inner else frozenset()
    if v.startswith("(") and v.endswith(")"):
        inner = v[1:-1]
        return k, tuple(inner.split(",")) if inner else ()
    if v.isdigit():
        return k, int(v)
    return k, v
