"""Spatial predicate extraction: axis primitives, distance bands, state flags,
and composed relations looked up from a relation vocabulary.

Primitives are per ordered entity pair (objects and locations alike):
  greater-x / greater-y   a strictly beyond b on the axis
  overlap-x / overlap-y   positive-length range intersection
  within-x / within-y     a's range contained in b's
Distance bands {touching, near, far} quantize the box gap; touching requires
a positive-length shared boundary, so corner contact is only "near".
`smaller` compares footprint areas (used by stacked-disk puzzles).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .world import Box, WorldState

NEAR_BAND = 15.0  # cm

FLAG_OPPOSITES = {"open": "closed", "closed": "open", "on": "off", "off": "on"}


@dataclass(frozen=True, order=True)
class Predicate:
    name: str
    args: tuple[str, ...]
    positive: bool = True

    def negated(self) -> "Predicate":
        return Predicate(self.name, self.args, not self.positive)

    def __str__(self) -> str:
        inner = f"{self.name}({', '.join(self.args)})"
        return inner if self.positive else f"not {inner}"


def canonical(p: Predicate) -> Predicate:
    """Rewrite negated flags into their positive opposites (not closed -> open)."""
    if not p.positive and p.name in FLAG_OPPOSITES:
        return Predicate(FLAG_OPPOSITES[p.name], p.args, True)
    return p


@dataclass(frozen=True)
class RelationDef:
    """A composed relation: conjunction of primitive names over one ordered pair."""

    name: str
    primitives: frozenset[str]
    arg_kinds: tuple[str, str] = ("any", "any")  # object | location | any


@dataclass
class RelationVocabulary:
    relations: dict[str, RelationDef] = field(default_factory=dict)

    def add(self, rel: RelationDef) -> None:
        self.relations[rel.name] = rel

    def names(self) -> list[str]:
        return sorted(self.relations)


def standard_vocabulary() -> RelationVocabulary:
    """The spatial-relation knowledge carried by the O+S presets."""
    v = RelationVocabulary()
    v.add(RelationDef("in", frozenset({"within-x", "within-y"}), ("object", "location")))
    v.add(RelationDef("next-to", frozenset({"touching"}), ("any", "any")))
    v.add(RelationDef("right-of", frozenset({"greater-x", "overlap-y"}), ("any", "any")))
    v.add(RelationDef("left-of", frozenset({"lesser-x", "overlap-y"}), ("any", "any")))
    v.add(RelationDef("above", frozenset({"greater-y", "overlap-x", "touching"}), ("object", "object")))
    return v


def _band(a: Box, b: Box) -> str:
    gx, gy = a.gap_x(b), a.gap_y(b)
    if (gx == 0 and a.overlap_y(b) > 0) or (gy == 0 and a.overlap_x(b) > 0):
        return "touching"
    if max(gx, gy) < NEAR_BAND:
        return "near"
    return "far"


def pair_primitives(a: Box, b: Box) -> set[str]:
    prims: set[str] = set()
    if a.x0 >= b.x1:
        prims.add("greater-x")
    if a.x1 <= b.x0:
        prims.add("lesser-x")
    if a.y0 >= b.y1:
        prims.add("greater-y")
    if a.y1 <= b.y0:
        prims.add("lesser-y")
    if a.overlap_x(b) > 0:
        prims.add("overlap-x")
    if a.overlap_y(b) > 0:
        prims.add("overlap-y")
    if b.x0 <= a.x0 and a.x1 <= b.x1:
        prims.add("within-x")
    if b.y0 <= a.y0 and a.y1 <= b.y1:
        prims.add("within-y")
    if a.area < b.area:
        prims.add("smaller")
    prims.add(_band(a, b))
    return prims


def extract_predicates(state: WorldState,
                       vocab: Optional[RelationVocabulary] = None) -> frozenset[Predicate]:
    """Complete symbolic belief set for a state. Pure: equal states give equal sets."""
    preds: set[Predicate] = set()

    for loc in state.locations:
        if loc.openable:
            preds.add(Predicate("open" if loc.open else "closed", (loc.name,)))
        if loc.powered:
            preds.add(Predicate("on" if loc.on else "off", (loc.name,)))
    if state.gripper is None:
        preds.add(Predicate("gripper-empty", ()))
    else:
        preds.add(Predicate("holding", (state.gripper,)))

    entities: list[tuple[str, str, Box]] = []
    for o in state.objects:
        if o.id != state.gripper:
            entities.append((o.id, "object", o.bounds))
    for l in state.locations:
        entities.append((l.name, "location", l.region))

    pair_sets: dict[tuple[str, str], set[str]] = {}
    for aid, akind, abox in entities:
        for bid, bkind, bbox in entities:
            if aid == bid:
                continue
            prims = pair_primitives(abox, bbox)
            pair_sets[(aid, bid)] = prims
            for p in prims:
                preds.add(Predicate(p, (aid, bid)))

    if vocab is not None:
        kinds = {aid: akind for aid, akind, _ in entities}
        for rel in vocab.relations.values():
            ka, kb = rel.arg_kinds
            for (aid, bid), prims in pair_sets.items():
                if ka != "any" and kinds[aid] != ka:
                    continue
                if kb != "any" and kinds[bid] != kb:
                    continue
                if rel.primitives <= prims:
                    preds.add(Predicate(rel.name, (aid, bid)))

    return frozenset(preds)


def attribute_predicates(state: WorldState) -> frozenset[Predicate]:
    """Perceptual attribute symbols: color/shape/size unary predicates."""
    preds = set()
    for o in state.objects:
        preds.add(Predicate(o.color, (o.id,)))
        preds.add(Predicate(o.shape, (o.id,)))
        preds.add(Predicate(o.size, (o.id,)))
    return frozenset(preds)
