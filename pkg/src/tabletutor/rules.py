"""Proceduralization: compiling one instructed execution into general,
state-sensitive behavior rules, and executing tasks from those rules.

A behavior rule's conditions are predicate patterns over role variables and
declared constants; compiling walks the successful forward projection and, at
each step, combines the operator's preconditions with the desired-state
predicates that are still unsatisfied (negated) or already achieved
(positive). Steps off the successful path compile nothing, which is what
drops superfluous instructed actions.
"""

from __future__ import annotations

import shlex
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from . import concepts
from .concepts import ActionRef, Arg
from .memories import EpisodicMemory, RetrievalFailure, SemanticMemory
from .predicates import (
    Predicate,
    RelationVocabulary,
    attribute_predicates,
    canonical,
    extract_predicates,
)
from .world import ActionError, PrimitiveAction, WorldState

MAX_TASK_DEPTH = 8


class CompileError(Exception):
    pass


class ProjectionFailure(CompileError):
    pass


class NoBehavior(Exception):
    """No preference rule applies and the desired state is unmet."""

    def __init__(self, verb: str):
        super().__init__(f"no applicable behavior for {verb!r}")
        self.verb = verb


@dataclass(frozen=True)
class PredPattern:
    name: str
    args: tuple[Arg, ...]
    positive: bool = True

    def instantiate(self, bindings: dict[str, str]) -> Predicate:
        return Predicate(self.name,
                         tuple(bindings[a[1]] if a[0] == "slot" else a[1]
                               for a in self.args),
                         self.positive)

    def __str__(self) -> str:
        inner = f"{self.name}({', '.join(a[1] if a[0] == 'const' else '[' + a[1] + ']' for a in self.args)})"
        return inner if self.positive else f"not {inner}"


@dataclass(frozen=True)
class BehaviorRule:
    task: str  # task verb
    kind: str  # "propose" | "prefer"
    conditions: tuple[PredPattern, ...]
    action: ActionRef
    provenance: str = ""

    def applicable(self, preds: frozenset[Predicate],
                   bindings: dict[str, str]) -> bool:
        for cond in self.conditions:
            p = cond.instantiate(bindings)
            if p.positive and p not in preds:
                return False
            if not p.positive and p.negated() in preds:
                return False
        return True


class RuleBase:
    """Procedural rule store, grouped by task verb, in compiled-plan order."""

    def __init__(self) -> None:
        self.rules: list[BehaviorRule] = []

    def add(self, rule: BehaviorRule) -> None:
        self.rules.append(rule)

    def extend(self, rules: list[BehaviorRule]) -> None:
        self.rules.extend(rules)

    def for_task(self, verb: str, kind: str = "prefer") -> list[BehaviorRule]:
        return [r for r in self.rules if r.task == verb and r.kind == kind]

    def has_behavior(self, verb: str) -> bool:
        return bool(self.for_task(verb))

    def retract_task(self, verb: str) -> None:
        self.rules = [r for r in self.rules if r.task != verb]


# ---------------------------------------------------------------------------
# desired states


def instantiate_goal(tcn, bindings: dict[str, str]) -> list[Predicate]:
    """Ground the tCN's goal predicates with the command bindings."""
    out = []
    for gp in concepts.goal_predicates(tcn):
        args = []
        for kind, name in gp.args:
            if kind == "slot":
                if name not in bindings:
                    raise CompileError(f"no binding for slot {name!r}")
                args.append(bindings[name])
            else:
                args.append(name)
        out.append(Predicate(gp.name, tuple(args), gp.positive))
    return out


def check_desired(preds: frozenset[Predicate], desired: list[Predicate]) -> bool:
    for p in desired:
        if p.positive and p not in preds:
            return False
        if not p.positive and p.negated() in preds:
            return False
    return True


def unsatisfied(preds: frozenset[Predicate], desired: list[Predicate]) -> list[Predicate]:
    out = []
    for p in desired:
        if p.positive and p not in preds:
            out.append(p)
        if not p.positive and p.negated() in preds:
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# operator grounding and simulation


@dataclass(frozen=True)
class GroundOp:
    ref: ActionRef
    args: tuple[str, ...]  # entity ids in role order

    def __str__(self) -> str:
        rel = f"{self.ref.relation}, " if self.ref.relation else ""
        return f"{self.ref.verb}({rel}{', '.join(self.args)})"


def ground_ref(ref: ActionRef, bindings: dict[str, str]) -> GroundOp:
    args = tuple(bindings[a[1]] if a[0] == "slot" else a[1] for a in ref.args)
    return GroundOp(ref, args)


def primitive_action(op: GroundOp, primitive: str) -> PrimitiveAction:
    if primitive == "pick-up":
        return PrimitiveAction("pick-up", obj=op.args[0])
    if primitive == "put-down":
        return PrimitiveAction("put-down", relation=op.ref.relation or "in",
                               obj=op.args[0], loc=op.args[1])
    return PrimitiveAction(primitive, loc=op.args[0])


PRIMITIVE_PRE: dict[str, Callable[[PrimitiveAction, WorldState], list[Predicate]]] = {
    "open": lambda a, s: [Predicate("closed", (a.loc,))],
    "close": lambda a, s: [Predicate("open", (a.loc,))],
    "turn-on": lambda a, s: [Predicate("off", (a.loc,))],
    "turn-off": lambda a, s: [Predicate("on", (a.loc,))],
    "pick-up": lambda a, s: [Predicate("gripper-empty", ())],
    "put-down": lambda a, s: [Predicate("holding", (a.obj,))] + (
        [Predicate("open", (a.loc,))]
        if s.location(a.loc).openable else []),
}


class TaskLibrary:
    """Resolves verbs to tCNs and executes them; the glue between semantic
    memory, the rule base, and the simulator."""

    def __init__(self, smem: SemanticMemory, rule_base: RuleBase,
                 vocab_fn: Callable[[], RelationVocabulary],
                 on_select: Optional[Callable] = None,
                 on_action: Optional[Callable] = None):
        self.smem = smem
        self.rule_base = rule_base
        self.vocab_fn = vocab_fn
        self.on_select = on_select  # called with the selected rule
        self.on_action = on_action  # called with (state_after, action)

    def tcn_for(self, verb: str):
        graph, _, _ = self.smem.retrieve(concepts.verb_cue(verb))
        return graph

    def predicates(self, state: WorldState) -> frozenset[Predicate]:
        # attributes are included so desired states may mention them
        return extract_predicates(state, self.vocab_fn()) | attribute_predicates(state)

    # -- execution --------------------------------------------------------

    def run_op(self, state: WorldState, op: GroundOp,
               depth: int = 0) -> tuple[WorldState, list[PrimitiveAction]]:
        """Apply a grounded operator: a primitive directly, a task via its
        compiled behavior. Returns the successor and the primitives applied."""
        if depth > MAX_TASK_DEPTH:
            raise NoBehavior(op.ref.verb)
        tcn = self.tcn_for(op.ref.verb)
        prim = concepts.primitive_of(tcn)
        if prim is not None:
            action = primitive_action(op, prim)
            nxt = apply_and_check(state, action)
            if self.on_action is not None:
                self.on_action(nxt, action)
            return nxt, [action]
        roles = concepts.roles_of(tcn)
        bindings = dict(zip(roles, op.args))
        return self.execute_task(tcn, bindings, state, depth + 1)

    def execute_task(self, tcn, bindings: dict[str, str], state: WorldState,
                     depth: int = 0) -> tuple[WorldState, list[PrimitiveAction]]:
        verb = concepts.verb_of(tcn)
        desired = instantiate_goal(tcn, bindings)
        if not desired:
            raise NoBehavior(verb)
        applied: list[PrimitiveAction] = []
        for _ in range(4 * MAX_TASK_DEPTH):
            preds = self.predicates(state)
            if check_desired(preds, desired):
                return state, applied
            rule = next((r for r in self.rule_base.for_task(verb)
                         if r.applicable(preds, bindings)), None)
            if rule is None:
                raise NoBehavior(verb)
            if self.on_select is not None:
                self.on_select(rule)
            op = ground_ref(rule.action, bindings)
            state, prims = self.run_op(state, op, depth)
            applied.extend(prims)
        raise NoBehavior(verb)

    # -- compile-time precondition analysis -------------------------------

    def op_preconditions(self, state: WorldState, op: GroundOp) -> list[Predicate]:
        """Preconditions of a grounded op at a state. For task ops these are
        the primitive preconditions of its simulated execution, minus
        predicates the execution itself establishes and gripper bookkeeping."""
        tcn = self.tcn_for(op.ref.verb)
        prim = concepts.primitive_of(tcn)
        if prim is not None:
            return PRIMITIVE_PRE[prim](primitive_action(op, prim), state)
        _, prims = self.run_op(state, op)
        pre: list[Predicate] = []
        achieved: set[Predicate] = set()
        s = state
        for action in prims:
            before = self.predicates(s)
            for p in PRIMITIVE_PRE[action.kind](action, s):
                if p.name in ("gripper-empty", "holding"):
                    continue
                if p not in achieved and p not in pre:
                    pre.append(p)
            s = apply_and_check(s, action)
            achieved |= self.predicates(s) - before
        return pre


def apply_and_check(state: WorldState, action: PrimitiveAction) -> WorldState:
    from .world import apply_primitive

    nxt = apply_primitive(state, action)
    nxt.check_invariants()
    return nxt


# ---------------------------------------------------------------------------
# proceduralization proper


def replay_initial_state(epmem: EpisodicMemory, verb: str) -> WorldState:
    """The state the learner was in when the instructed execution began."""
    ep = epmem.retrieve(event_kind="task-begin", event_detail=verb)
    return ep.world


def variablize(pred: Predicate, bindings: dict[str, str]) -> PredPattern:
    by_entity = {}
    for role in sorted(bindings):
        by_entity.setdefault(bindings[role], role)
    args = tuple((("slot", by_entity[a]) if a in by_entity else ("const", a))
                 for a in pred.args)
    return PredPattern(pred.name, args, pred.positive)


def proceduralize(tcn, bindings: dict[str, str], initial_state: WorldState,
                  library: TaskLibrary, lesson_id: str = "") -> list[BehaviorRule]:
    """Forward-project the problem space from the replayed initial state and
    compile one preference rule per step of the shortest successful path,
    plus one proposal rule per problem-space operator."""
    verb = concepts.verb_of(tcn)
    desired = instantiate_goal(tcn, bindings)
    refs = concepts.ps_actions(tcn)
    if not desired or not refs:
        raise ProjectionFailure(f"{verb}: goal or problem space missing")
    ops = [ground_ref(r, bindings) for r in refs]

    rules: list[BehaviorRule] = [
        BehaviorRule(verb, "propose", (), r, provenance=f"{lesson_id}/propose")
        for r in refs]

    # breadth-first projection, recorded instruction order first, so the
    # first goal-reaching path is shortest and superfluous steps drop out
    bound = 2 * max(len(refs), 1) + 2
    start_key = library.predicates(initial_state)
    queue: deque[tuple[WorldState, tuple[int, ...]]] = deque([(initial_state, ())])
    seen = {start_key}
    path: Optional[tuple[int, ...]] = None
    if check_desired(start_key, desired):
        path = ()
    while queue and path is None:
        state, steps = queue.popleft()
        if len(steps) >= bound:
            continue
        for i, op in enumerate(ops):
            try:
                nxt, _ = library.run_op(state, op)
            except (ActionError, NoBehavior):
                continue
            key = library.predicates(nxt)
            if key in seen:
                continue
            seen.add(key)
            if check_desired(key, desired):
                path = steps + (i,)
                break
            queue.append((nxt, steps + (i,)))
    if path is None:
        raise ProjectionFailure(f"{verb}: desired state unreachable")

    state = initial_state
    for step_no, i in enumerate(path):
        op = ops[i]
        preds = library.predicates(state)
        conds: list[Predicate] = []
        for p in library.op_preconditions(state, op):
            if p not in conds:
                conds.append(p)
        for p in desired:
            holds = (p in preds) if p.positive else (p.negated() not in preds)
            c = canonical(p) if holds else canonical(p.negated())
            if c not in conds:
                conds.append(c)
        patterns = tuple(variablize(c, bindings) for c in conds)
        rules.append(BehaviorRule(verb, "prefer", patterns, refs[i],
                                  provenance=f"{lesson_id}/step{step_no}"))
        state, _ = library.run_op(state, op)
    return rules


# ---------------------------------------------------------------------------
# rule dump format (debugging, goldens, preset files)


def rule_to_lines(rule: BehaviorRule) -> list[str]:
    lines = [f"rule {rule.task} {rule.kind}"]
    for c in rule.conditions:
        sign = "+" if c.positive else "-"
        args = " ".join(f"{k}:{v}" for k, v in c.args)
        lines.append(f"  if {sign}{c.name} {args}".rstrip())
    a = rule.action
    args = " ".join(f"{k}:{v}" for k, v in a.args)
    rel = f" rel:{a.relation}" if a.relation else ""
    lines.append(f"  do {shlex.quote(a.verb)}{rel} {args} order:{a.order}".rstrip())
    lines.append("end")
    return lines


def rules_from_lines(lines) -> list[BehaviorRule]:
    rules: list[BehaviorRule] = []
    task = kind = None
    conds: list[PredPattern] = []
    action: Optional[ActionRef] = None
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = shlex.split(line)
        if parts[0] == "rule":
            task, kind, conds, action = parts[1], parts[2], [], None
        elif parts[0] == "if":
            name = parts[1][1:]
            positive = parts[1][0] == "+"
            args = tuple(tuple(p.split(":", 1)) for p in parts[2:])
            conds.append(PredPattern(name, args, positive))
        elif parts[0] == "do":
            verb = parts[1]
            relation = None
            order = 0
            args = []
            for p in parts[2:]:
                k, v = p.split(":", 1)
                if k == "rel":
                    relation = v
                elif k == "order":
                    order = int(v)
                else:
                    args.append((k, v))
            action = ActionRef(verb, tuple(args), relation, order)
        elif parts[0] == "end":
            assert task and kind and action
            rules.append(BehaviorRule(task, kind, tuple(conds), action))
        else:
            raise CompileError(f"unknown rule directive {parts[0]!r}")
    return rules
