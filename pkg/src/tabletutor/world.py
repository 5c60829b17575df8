"""Table-top world simulator: scene geometry, primitive actions, state transitions.

The world is a set of axis-aligned boxes on a 2D table plane (cm). The y axis
doubles as the stacking axis inside a location region, which is enough for
pegs and supply piles without real 3D.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Optional

COLORS = ("red", "blue", "green", "yellow")
SHAPES = ("cylinder", "triangle", "cube", "sphere")
SIZES = ("small", "large")

CORE_LOCATIONS = ("pantry", "garbage", "table", "stove")


class WorldError(Exception):
    """Base class for simulator errors."""


class ActionError(WorldError):
    """A primitive action was illegal in the given state."""


class PickWhileHolding(ActionError):
    pass


class PickBlocked(ActionError):
    """Object is covered by another object or inside a closed location."""


class PutWhileEmpty(ActionError):
    pass


class PutIntoClosed(ActionError):
    pass


class RedundantToggle(ActionError):
    """Opening an open pantry, turning on a running stove, etc."""


@dataclass(frozen=True)
class Box:
    """Axis-aligned box, half-open is not needed; edges may touch."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise WorldError(f"degenerate box {self}")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height

    def inside(self, other: "Box") -> bool:
        return (other.x0 <= self.x0 and self.x1 <= other.x1
                and other.y0 <= self.y0 and self.y1 <= other.y1)

    def overlap_x(self, other: "Box") -> float:
        return min(self.x1, other.x1) - max(self.x0, other.x0)

    def overlap_y(self, other: "Box") -> float:
        return min(self.y1, other.y1) - max(self.y0, other.y0)

    def gap_x(self, other: "Box") -> float:
        return max(0.0, -self.overlap_x(other))

    def gap_y(self, other: "Box") -> float:
        return max(0.0, -self.overlap_y(other))

    def moved_to(self, x0: float, y0: float) -> "Box":
        return Box(x0, y0, x0 + self.width, y0 + self.height)


@dataclass(frozen=True)
class SceneObject:
    id: str
    color: str
    shape: str
    size: str
    bounds: Box

    def __post_init__(self):
        if self.color not in COLORS:
            raise WorldError(f"unknown color {self.color!r}")
        if self.shape not in SHAPES:
            raise WorldError(f"unknown shape {self.shape!r}")
        if self.size not in SIZES:
            raise WorldError(f"unknown size {self.size!r}")


@dataclass(frozen=True)
class Location:
    name: str
    region: Box
    openable: bool = False
    open: bool = True
    powered: bool = False
    on: bool = False


@dataclass(frozen=True)
class PrimitiveAction:
    """One of the six primitive action kinds.

    kind in {open, close, turn-on, turn-off, pick-up, put-down};
    pick-up takes obj; put-down takes (relation, obj, loc); the toggles take loc.
    """

    kind: str
    obj: Optional[str] = None
    loc: Optional[str] = None
    relation: Optional[str] = None

    KINDS = ("open", "close", "turn-on", "turn-off", "pick-up", "put-down")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise WorldError(f"unknown primitive kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "pick-up":
            return f"pick-up({self.obj})"
        if self.kind == "put-down":
            return f"put-down({self.relation}, {self.obj}, {self.loc})"
        return f"{self.kind}({self.loc})"


@dataclass(frozen=True)
class WorldState:
    objects: tuple[SceneObject, ...]
    locations: tuple[Location, ...]
    gripper: Optional[str] = None  # held object id
    clock: int = 0

    def object(self, oid: str) -> SceneObject:
        for o in self.objects:
            if o.id == oid:
                return o
        raise WorldError(f"no object {oid!r}")

    def location(self, name: str) -> Location:
        for l in self.locations:
            if l.name == name:
                return l
        raise WorldError(f"no location {name!r}")

    def has_object(self, oid: str) -> bool:
        return any(o.id == oid for o in self.objects)

    def has_location(self, name: str) -> bool:
        return any(l.name == name for l in self.locations)

    def location_of(self, oid: str) -> Optional[Location]:
        """Location whose region contains the object, None if held."""
        if self.gripper == oid:
            return None
        obj = self.object(oid)
        for l in self.locations:
            if obj.bounds.inside(l.region):
                return l
        return None

    def objects_in(self, loc_name: str) -> list[SceneObject]:
        region = self.location(loc_name).region
        return [o for o in self.objects
                if o.id != self.gripper and o.bounds.inside(region)]

    def check_invariants(self) -> None:
        names = [l.name for l in self.locations]
        if len(set(names)) != len(names):
            raise WorldError("duplicate location names")
        for a in self.locations:
            for b in self.locations:
                if a.name < b.name and a.region.overlap_x(b.region) > 0 \
                        and a.region.overlap_y(b.region) > 0:
                    raise WorldError(f"overlapping regions {a.name}/{b.name}")
        for o in self.objects:
            if o.id == self.gripper:
                continue
            containers = [l for l in self.locations if o.bounds.inside(l.region)]
            if len(containers) != 1:
                raise WorldError(f"object {o.id} in {len(containers)} regions")

    def _with_object(self, obj: SceneObject) -> "WorldState":
        objs = tuple(obj if o.id == obj.id else o for o in self.objects)
        return replace(self, objects=objs)

    def _with_location(self, loc: Location) -> "WorldState":
        locs = tuple(loc if l.name == loc.name else l for l in self.locations)
        return replace(self, locations=locs)

    def _tick(self) -> "WorldState":
        return replace(self, clock=self.clock + 1)


OBJECT_MARGIN = 1.0  # cm clearance when placing into a region


def _free_placement(state: WorldState, obj: SceneObject, loc: Location) -> Box:
    """Place beside existing occupants if room, else stack."""
    occupants = state.objects_in(loc.name)
    x = loc.region.x0 + OBJECT_MARGIN
    y = loc.region.y0 + OBJECT_MARGIN
    w = obj.bounds.width
    while x + w + OBJECT_MARGIN <= loc.region.x1:
        cand = obj.bounds.moved_to(x, y)
        if all(cand.overlap_x(o.bounds) <= 0 or cand.overlap_y(o.bounds) <= 0
               for o in occupants):
            return cand
        x += w + OBJECT_MARGIN
    # no side room: stack on the occupant column at the region start
    base = obj.bounds.moved_to(loc.region.x0 + OBJECT_MARGIN, y)
    top = max((o.bounds.y1 for o in occupants if base.overlap_x(o.bounds) > 0),
              default=y)
    return base.moved_to(base.x0, top)


def covered_by(state: WorldState, oid: str) -> list[SceneObject]:
    """Objects stacked directly or transitively above the given object."""
    obj = state.object(oid)
    here = state.location_of(oid)
    if here is None:
        return []
    return [o for o in state.objects_in(here.name)
            if o.id != oid
            and o.bounds.overlap_x(obj.bounds) > 0
            and o.bounds.y0 >= obj.bounds.y1 - 1e-9]


def apply_primitive(state: WorldState, action: PrimitiveAction) -> WorldState:
    """Return the successor state; raise ActionError subclasses on illegal use."""
    if action.kind in ("open", "close"):
        loc = state.location(action.loc)
        if not loc.openable:
            raise ActionError(f"{loc.name} is not openable")
        want_open = action.kind == "open"
        if loc.open == want_open:
            raise RedundantToggle(f"{loc.name} already {'open' if want_open else 'closed'}")
        return state._with_location(replace(loc, open=want_open))._tick()

    if action.kind in ("turn-on", "turn-off"):
        loc = state.location(action.loc)
        if not loc.powered:
            raise ActionError(f"{loc.name} has no power switch")
        want_on = action.kind == "turn-on"
        if loc.on == want_on:
            raise RedundantToggle(f"{loc.name} already {'on' if want_on else 'off'}")
        return state._with_location(replace(loc, on=want_on))._tick()

    if action.kind == "pick-up":
        if state.gripper is not None:
            raise PickWhileHolding(f"already holding {state.gripper}")
        obj = state.object(action.obj)
        here = state.location_of(action.obj)
        if here is not None and here.openable and not here.open:
            raise PickBlocked(f"{here.name} is closed")
        if covered_by(state, action.obj):
            raise PickBlocked(f"{action.obj} has objects on top")
        return replace(state, gripper=action.obj)._tick()

    if action.kind == "put-down":
        if state.gripper is None:
            raise PutWhileEmpty("gripper is empty")
        if state.gripper != action.obj:
            raise ActionError(f"holding {state.gripper}, not {action.obj}")
        if action.relation != "in":
            raise ActionError(f"cannot place with relation {action.relation!r}")
        loc = state.location(action.loc)
        if loc.openable and not loc.open:
            raise PutIntoClosed(f"{loc.name} is closed")
        obj = state.object(action.obj)
        bounds = _free_placement(state, obj, loc)
        nxt = state._with_object(replace(obj, bounds=bounds))
        return replace(nxt, gripper=None)._tick()

    raise ActionError(f"unhandled kind {action.kind}")


# ---------------------------------------------------------------------------
# scene files


def parse_scene(text: str) -> WorldState:
    """Line-oriented scene format.

    object <id> <color> <shape> <size> <x> <y> [<w> <h>]
    location <name> <x0> <y0> <x1> <y1> [openable] [closed] [powered]
    Lines starting with # are comments.
    """
    objects: list[SceneObject] = []
    locations: list[Location] = []
    sizes = {"small": (6.0, 6.0), "large": (10.0, 10.0)}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "object":
                _, oid, color, shape, size, x, y, *rest = parts
                w, h = sizes[size]
                if rest:
                    w, h = float(rest[0]), float(rest[1])
                objects.append(SceneObject(oid, color, shape, size,
                                           Box(float(x), float(y),
                                               float(x) + w, float(y) + h)))
            elif parts[0] == "location":
                _, name, x0, y0, x1, y1, *flags = parts
                locations.append(Location(
                    name, Box(float(x0), float(y0), float(x1), float(y1)),
                    openable="openable" in flags,
                    open="closed" not in flags,
                    powered="powered" in flags))
            else:
                raise WorldError(f"unknown directive {parts[0]!r}")
        except (ValueError, KeyError) as exc:
            raise WorldError(f"scene line {lineno}: {exc}") from exc
    state = WorldState(objects=tuple(objects), locations=tuple(locations))
    state.check_invariants()
    return state


DEFAULT_SCENE = """\
# the standard table-top: four locations, four objects
location table   0  0  60 40
location pantry  65 0  100 40 openable closed
location stove   65 45 100 80 openable powered
location garbage 0  45 60 80
object obj-1 blue   cylinder small 5  5
object obj-2 red    triangle large 20 5
object obj-3 green  cube     small 35 5
object obj-4 yellow sphere   large 5  50
"""


def default_scene() -> WorldState:
    return parse_scene(DEFAULT_SCENE)
