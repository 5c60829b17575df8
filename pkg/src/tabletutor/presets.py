"""Knowledge presets: the learner's initial semantic memory and rule base.

null   - primitive action vocabulary only
O      - + word maps for object attributes, shapes, categories, locations
O+S    - + spatial relation maps (in, next-to, right-of, left-of, above)
O+S+T  - + task concept networks and behavior rules, normally produced by
         exporting a taught session (see save_knowledge/load_knowledge)
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from . import concepts
from .memories import ConceptGraph, SemanticMemory, graph_to_lines, graphs_from_lines
from .predicates import standard_vocabulary
from .rules import BehaviorRule, RuleBase, rule_to_lines, rules_from_lines
from .world import WorldState

PRESETS = ("null", "O", "O+S", "O+S+T")

_ATTRIBUTE_WORDS = ("red", "blue", "green", "yellow", "small", "large")
_SHAPE_WORDS = ("cylinder", "triangle", "cube", "sphere")
_CATEGORY_WORDS = ("block", "object")


def object_word_maps(scene: Optional[WorldState] = None) -> list[ConceptGraph]:
    maps = []
    for w in _ATTRIBUTE_WORDS:
        maps.append(concepts.word_map(w, "adjective", w, "attribute"))
    for w in _SHAPE_WORDS:
        maps.append(concepts.word_map(w, "noun", w, "shape"))
    for w in _CATEGORY_WORDS:
        maps.append(concepts.word_map(w, "noun", w, "any-object"))
    maps.append(concepts.word_map("disk", "noun", "cylinder", "shape"))
    maps.append(concepts.word_map("location", "noun", "location", "any-location"))
    names = ([l.name for l in scene.locations] if scene is not None
             else ["pantry", "garbage", "table", "stove"])
    for name in names:
        maps.append(concepts.word_map(name, "noun", name, "location-name"))
    return maps


def relation_maps() -> list[ConceptGraph]:
    return [concepts.relation_map(d.name, d.primitives, d.arg_kinds)
            for d in standard_vocabulary().relations.values()]


def preset_graphs(name: str, scene: Optional[WorldState] = None) -> list[ConceptGraph]:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}")
    graphs = concepts.primitive_verb_maps()
    if name in ("O", "O+S", "O+S+T"):
        graphs += object_word_maps(scene)
    if name in ("O+S", "O+S+T"):
        graphs += relation_maps()
    return graphs


def load_preset(smem: SemanticMemory, name: str,
                scene: Optional[WorldState] = None) -> None:
    for g in preset_graphs(name, scene):
        smem.store(g)


# ---------------------------------------------------------------------------
# knowledge export/import (the O+S+T serialization)


def save_knowledge(path: Path, smem: SemanticMemory, rule_base: RuleBase) -> None:
    lines: list[str] = ["# exported learner knowledge"]
    for entry in sorted(smem.graphs(), key=lambda e: e.id):
        lines += graph_to_lines(entry.graph, gid=str(entry.id))
    for rule in rule_base.rules:
        lines += rule_to_lines(rule)
    Path(path).write_text("\n".join(lines) + "\n")


def load_knowledge(path: Path) -> tuple[list[ConceptGraph], list[BehaviorRule]]:
    return knowledge_from_text(Path(path).read_text())


def knowledge_from_text(text: str) -> tuple[list[ConceptGraph], list[BehaviorRule]]:
    lines = text.splitlines()
    graph_lines = []
    rule_lines = []
    in_rule = False
    for line in lines:
        stripped = line.strip()
        if stripped.startswith("rule "):
            in_rule = True
        if in_rule:
            rule_lines.append(line)
            if stripped == "end":
                in_rule = False
        else:
            graph_lines.append(line)
    return graphs_from_lines(graph_lines), rules_from_lines(rule_lines)
