"""The standard three-task curriculum (move, shift, store) scripted for each
knowledge preset, and the preset sweep used to compare interaction cost.

Tasks are taught in order within one session so later tasks reuse earlier
ones: shift is taught as one move, store as open + move + close.
"""

from __future__ import annotations

from typing import Optional

from .kernel import Metrics, Session
from .lessons import run_lesson
from .memories import graph_to_lines, graphs_from_lines
from .presets import PRESETS
from .rules import rule_to_lines, rules_from_lines
from .world import PrimitiveAction, WorldState, apply_primitive, default_scene

TASKS = ("move", "shift", "store")

_MOVE_TEACHING = """\
> move the blue cylinder to the garbage
? goal of move :: the goal is the cylinder is in the garbage
? What action :: pick up the cylinder
? What action :: put the cylinder in the garbage
expect in obj-1 garbage
"""

_SHIFT_TEACHING = """\
> shift the cube to the garbage
? goal of shift :: the goal is the cube is in the garbage
? What action :: move the cube to the garbage
expect in obj-3 garbage
"""

_STORE_TEACHING = """\
> store the blue cylinder
? goal of store :: the goal is the cylinder is in the pantry and the pantry is closed
? What action :: open the pantry
? What action :: move the cylinder to the pantry
? What action :: close the pantry
expect in obj-1 pantry
expect not open pantry
"""

# word/relation teaching inserted ahead of the first use of each gap
_NULL_WORDS_MOVE = """\
? cylinder mean :: this is a cylinder @ obj-1
? blue mean :: this is blue @ obj-1
? garbage mean :: this is the garbage @ garbage
? in mean :: the sphere is in the garbage
? sphere mean :: this is a sphere @ obj-4
"""

_NULL_WORDS_SHIFT = """\
? cube mean :: this is a cube @ obj-3
"""

_NULL_WORDS_STORE = """\
? pantry mean :: this is the pantry @ pantry
"""

_RELATION_ONLY = """\
? in mean :: the sphere is in the garbage
"""


def _merge(teaching: str, extra: str) -> str:
    # extra reply rules go first so gaps hit them before the task replies;
    # rule matching is by question pattern, so order across kinds is safe
    return extra + teaching


LESSONS: dict[tuple[str, str], str] = {}
for _preset in ("null", "O", "O+S"):
    if _preset == "null":
        move_x, shift_x, store_x = _NULL_WORDS_MOVE, _NULL_WORDS_SHIFT, _NULL_WORDS_STORE
    elif _preset == "O":
        move_x, shift_x, store_x = _RELATION_ONLY, "", ""
    else:
        move_x = shift_x = store_x = ""
    LESSONS[("move", _preset)] = _merge(_MOVE_TEACHING, move_x)
    LESSONS[("shift", _preset)] = _merge(_SHIFT_TEACHING, shift_x)
    LESSONS[("store", _preset)] = _merge(_STORE_TEACHING, store_x)

# a lesson whose instructed sequence detours through the pantry; the compiled
# behavior must not inherit the detour
DETOUR_MOVE_LESSON = """\
preset O+S
begin-scene
location table   0  0  60 40
location pantry  65 0  100 40 openable
location stove   65 45 100 80 openable powered
location garbage 0  45 60 80
object obj-1 blue cylinder small 5 5
object obj-2 red triangle large 20 5
object obj-3 green cube small 35 5
object obj-4 yellow sphere large 5 50
end-scene
> move the blue cylinder to the garbage
? goal of move :: the goal is the cylinder is in the garbage
? What action :: pick up the blue cylinder
? What action :: put the cylinder in the pantry
? What action :: pick up the cylinder
? What action :: put the cylinder in the garbage
expect in obj-1 garbage
"""

# bare commands for a fully-knowledgeable (O+S+T) run
COMMANDS = {
    "move": "> move the blue cylinder to the garbage\nexpect in obj-1 garbage\n",
    "shift": "> shift the cube to the garbage\nexpect in obj-3 garbage\n",
    "store": ("> store the blue cylinder\nexpect in obj-1 pantry\n"
              "expect not open pantry\n"),
}


def export_knowledge(session: Session):
    """Serialize and re-parse the session's knowledge, as an export would."""
    glines: list[str] = []
    for entry in sorted(session.smem.graphs(), key=lambda e: e.id):
        glines += graph_to_lines(entry.graph, gid=str(entry.id))
    rlines: list[str] = []
    for rule in session.rule_base.rules:
        rlines += rule_to_lines(rule)
    return graphs_from_lines(glines), rules_from_lines(rlines)


def teach_curriculum(preset: str, tasks: tuple[str, ...] = TASKS) -> Session:
    """Teach all tasks in one session under the given preset."""
    session = Session(default_scene(), preset=preset)
    for task in tasks:
        run_lesson(LESSONS[(task, preset)], session=session)
    return session


def run_trained(knowledge, tasks: tuple[str, ...] = TASKS) -> Session:
    session = Session(default_scene(), knowledge=knowledge)
    for task in tasks:
        run_lesson(COMMANDS[task], session=session)
    return session


# ---------------------------------------------------------------------------
# task-template instances: every object x destination, over the legal
# initial-state variants each task is expected to generalize across

_SHAPES = {"obj-1": "cylinder", "obj-2": "triangle", "obj-3": "cube",
           "obj-4": "sphere"}
_DESTS = ("table", "pantry", "garbage", "stove")


def _opened(state: WorldState, loc_name: str) -> WorldState:
    loc = state.location(loc_name)
    if loc.openable and not loc.open:
        return apply_primitive(state, PrimitiveAction("open", loc=loc_name))
    return state


def _holding(state: WorldState, obj_id: str) -> WorldState:
    return apply_primitive(state, PrimitiveAction("pick-up", obj=obj_id))


def _relocated(state: WorldState, obj_id: str, avoid: tuple[str, ...]) -> WorldState:
    here = state.location_of(obj_id)
    skip = set(avoid) | ({here.name} if here else set())
    target = next(n for n in ("table", "garbage", "stove") if n not in skip)
    s = _opened(state, target)
    s = _holding(s, obj_id)
    return apply_primitive(s, PrimitiveAction("put-down", relation="in",
                                              obj=obj_id, loc=target))


def instance_states(task: str, obj_id: str, dest: str) -> list[WorldState]:
    """The initial-state variants a trained task must handle without help.
    Openable destinations start open except where the task opens them itself."""
    base = default_scene()
    if task in ("move", "shift"):
        base = _opened(base, dest)
    if task == "move":
        return [base, _holding(base, obj_id)]
    if task == "shift":
        other = _relocated(base, obj_id, avoid=(dest,))
        return [base, _holding(base, obj_id), other, _holding(other, obj_id)]
    if task == "store":
        opened = _opened(base, "pantry")
        return [base, _holding(base, obj_id), opened, _holding(opened, obj_id)]
    raise ValueError(f"unknown task {task!r}")


def instances(task: str) -> list[tuple[str, str, str, list[WorldState]]]:
    """(command, object, destination, states) for every task instantiation."""
    out = []
    dests = ("pantry",) if task == "store" else _DESTS
    for obj_id, shape in _SHAPES.items():
        for dest in dests:
            if task == "store":
                command = f"store the {shape}"
            else:
                command = f"{task} the {shape} to the {dest}"
            out.append((command, obj_id, dest, instance_states(task, obj_id, dest)))
    return out


def run_instance(knowledge, command: str, state: WorldState) -> Session:
    """Execute one trained command from one initial state."""
    session = Session(state, knowledge=knowledge)
    session.submit(command)
    if session.awaiting_reply:
        raise RuntimeError(f"trained run asked a question: {session.pending.text}")
    return session


def primitives_applied(session: Session) -> list[str]:
    return [ep.event.detail for ep in session.epmem.episodes
            if ep.event.kind == "action"]


def sweep_presets(tasks: tuple[str, ...] = TASKS,
                  presets: Optional[tuple[str, ...]] = None) -> dict[str, Metrics]:
    """Interaction cost of acquiring/executing the curriculum per preset.
    The trained preset is built by exporting the taught O+S session."""
    presets = presets or PRESETS
    out: dict[str, Metrics] = {}
    trained_source: Optional[Session] = None
    for preset in presets:
        if preset == "O+S+T":
            if trained_source is None:
                trained_source = teach_curriculum("O+S", tasks)
            out[preset] = run_trained(export_knowledge(trained_source), tasks).metrics
            continue
        session = teach_curriculum(preset, tasks)
        if preset == "O+S":
            trained_source = session
        out[preset] = session.metrics
    return out
