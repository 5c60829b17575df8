"""Dialogue-specified puzzles: acquire a problem specification through the
fixed question protocol, then solve by breadth-first search over internally
simulated actions.

Puzzle boards are ordinary scenes (cells are locations, pieces are objects),
so predicate extraction and compiled task behaviors are reused unchanged.
Conditions and goals are stored as parsed clauses; parameter indices appear
as bare numbers in condition sentences ("1 is in 3").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import concepts, grammar, ground
from .concepts import ActionRef
from .dialogue import SPEC_QUESTIONS
from .grammar import Clause, Deictic, GoalStatement, Imperative, MetaReply, NP, Param, TeachingReply
from .memories import RetrievalFailure, SemanticMemory, WorkingMemory
from .predicates import Predicate, attribute_predicates
from .rules import GroundOp, NoBehavior, TaskLibrary
from .world import ActionError, WorldState


class GameError(Exception):
    pass


class SpecError(GameError):
    pass


class NoSolution(GameError):
    pass


class SpecUsesUncompiledTask(GameError):
    def __init__(self, verb: str):
        super().__init__(f"no behavior rules for {verb!r}")
        self.verb = verb


@dataclass(frozen=True)
class SpecParam:
    index: int  # 1-based, as spoken in condition sentences
    noun: str
    adjectives: tuple[str, ...] = ()


@dataclass(frozen=True)
class SpecAction:
    verb: str
    params: tuple[SpecParam, ...]
    conditions: tuple[Clause, ...]


@dataclass
class ProblemSpec:
    name: str
    actions: list[SpecAction]
    goals: list[tuple[Clause, ...]]  # disjunction of conjunctions

    def validate(self, smem: SemanticMemory) -> None:
        if not self.goals:
            raise SpecError(f"{self.name}: goal missing")
        for action in self.actions:
            try:
                smem.retrieve(concepts.verb_cue(action.verb))
            except RetrievalFailure:
                raise SpecError(f"{self.name}: unknown verb {action.verb!r}")
            declared = {p.index for p in action.params}
            for cond in action.conditions:
                for n in _param_refs(cond, action.params):
                    if n not in declared:
                        raise SpecError(
                            f"{self.name}: condition references parameter {n}")


Move = tuple[SpecAction, dict[int, str]]


# ---------------------------------------------------------------------------
# condition evaluation


@dataclass
class _Ctx:
    world: WorldState
    preds: frozenset[Predicate]
    wm: WorkingMemory
    smem: SemanticMemory


def _make_ctx(state: WorldState, smem: SemanticMemory,
              library: TaskLibrary) -> _Ctx:
    preds = library.predicates(state)
    wm = WorkingMemory(world=state, predicates=preds,
                       attributes=attribute_predicates(state))
    return _Ctx(state, preds, wm, smem)


def _np_param(np: NP, params: tuple[SpecParam, ...]) -> Optional[int]:
    """Definite NPs whose head matches a parameter type refer to it."""
    if np.det != "the":
        return None
    for p in params:
        if p.noun == np.noun and set(np.adjectives) <= set(p.adjectives) | set():
            return p.index
    return None


def _term_params(term, params) -> set[int]:
    if isinstance(term, Param):
        return {term.n}
    if isinstance(term, NP):
        refs = set()
        idx = _np_param(term, params)
        if idx is not None:
            refs.add(idx)
        if term.compare is not None:
            refs |= _term_params(term.compare[1], params)
        return refs
    return set()


def _param_refs(cond: Clause, params) -> set[int]:
    refs = _term_params(cond.subject, params)
    if cond.obj is not None:
        refs |= _term_params(cond.obj, params)
    return refs


def _term_candidates(term, ctx: _Ctx, params, binding: dict[int, str]) -> list[str]:
    if isinstance(term, Param):
        if term.n not in binding:
            raise SpecError(f"parameter {term.n} unbound")
        return [binding[term.n]]
    if isinstance(term, Deictic):
        raise SpecError("pointing is not available inside conditions")
    assert isinstance(term, NP)
    idx = _np_param(term, params)
    if idx is not None:
        return [binding[idx]]
    kind, symbol = ground.resolve_word(ctx.smem, term.noun, "noun")
    if kind == "location-name":
        cands = [symbol] if ctx.world.has_location(symbol) else []
    else:
        cands = ground.candidates_for(term, ctx.wm, ctx.smem)
    if term.compare is not None:
        op, ref_term = term.compare
        refs = _term_candidates(ref_term, ctx, params, binding)
        cands = [c for c in cands
                 if any(Predicate("smaller", (c, r)) in ctx.preds for r in refs)]
    return cands


def _entity_satisfies(cond: Clause, s: str, o: Optional[str], ctx: _Ctx) -> bool:
    if cond.kind == "attr":
        if cond.attr == "empty":
            return (ctx.world.has_location(s)
                    and not ctx.world.objects_in(s))
        return (Predicate(cond.attr, (s,)) in ctx.preds
                or Predicate(cond.attr, (s,)) in ctx.wm.attributes)
    assert o is not None
    return Predicate(cond.prep, (s, o)) in ctx.preds


def holds(cond: Clause, ctx: _Ctx, params=(), binding: Optional[dict] = None) -> bool:
    """A positive clause requires a witness; a negative clause requires none.
    Indefinite NPs quantify over matching scene entities."""
    binding = binding or {}
    subjects = _term_candidates(cond.subject, ctx, params, binding)
    objects: list[Optional[str]] = [None]
    if cond.kind == "rel":
        objects = list(_term_candidates(cond.obj, ctx, params, binding))
    witness = any(_entity_satisfies(cond, s, o, ctx)
                  for s in subjects for o in objects)
    return witness if cond.positive else not witness


def goal_met(spec: ProblemSpec, ctx: _Ctx) -> bool:
    return any(all(holds(c, ctx) for c in conj) for conj in spec.goals)


# ---------------------------------------------------------------------------
# legal moves and search


def _action_bindings(action: SpecAction, ctx: _Ctx) -> Iterator[dict[int, str]]:
    """Enumerate bindings; each condition is checked as soon as every
    parameter it mentions is bound, pruning the product early."""
    domains = []
    for p in action.params:
        np = NP("a", p.adjectives, p.noun)
        domains.append(_term_candidates(np, ctx, (), {}))
    schedule: dict[int, list[Clause]] = {}
    for cond in action.conditions:
        refs = _param_refs(cond, action.params)
        schedule.setdefault(max(refs, default=0), []).append(cond)

    def rec(i: int, binding: dict[int, str]) -> Iterator[dict[int, str]]:
        if i > len(action.params):
            yield dict(binding)
            return
        for cand in domains[i - 1]:
            binding[i] = cand
            if all(holds(c, ctx, action.params, binding)
                   for c in schedule.get(i, [])):
                yield from rec(i + 1, binding)
            del binding[i]

    base = schedule.get(0, [])
    if all(holds(c, ctx, action.params, {}) for c in base):
        yield from rec(1, {})


def legal_moves(spec: ProblemSpec, state: WorldState, smem: SemanticMemory,
                library: TaskLibrary) -> list[Move]:
    ctx = _make_ctx(state, smem, library)
    moves: list[Move] = []
    for action in spec.actions:
        for binding in _action_bindings(action, ctx):
            moves.append((action, binding))
    return moves


def _apply_move(move: Move, state: WorldState, library: TaskLibrary) -> WorldState:
    action, binding = move
    tcn = library.tcn_for(action.verb)
    roles = concepts.roles_of(tcn)
    args = tuple(binding[i + 1] for i in range(len(roles)))
    ref = ActionRef(action.verb, tuple(("const", a) for a in args),
                    relation="in" if "in" in roles else None)
    nxt, _ = library.run_op(state, GroundOp(ref, args))
    return nxt


def move_text(move: Move) -> str:
    action, binding = move
    args = ", ".join(binding[i] for i in sorted(binding))
    return f"{action.verb}({args})"


def solve(spec: ProblemSpec, state: WorldState, smem: SemanticMemory,
          library: TaskLibrary, depth_cap: int = 64,
          expansion_cap: int = 100_000) -> list[Move]:
    """Shortest move sequence to a goal-satisfying state (BFS with
    predicate-set duplicate elimination over simulated successors)."""
    for action in spec.actions:
        tcn = library.tcn_for(action.verb)
        if concepts.primitive_of(tcn) is None \
                and not library.rule_base.has_behavior(action.verb):
            raise SpecUsesUncompiledTask(action.verb)

    start_ctx = _make_ctx(state, smem, library)
    if goal_met(spec, start_ctx):
        return []
    frontier: list[tuple[WorldState, list[Move]]] = [(state, [])]
    seen = {start_ctx.preds}
    expanded = 0
    while frontier:
        next_frontier: list[tuple[WorldState, list[Move]]] = []
        for st, path in frontier:
            if len(path) >= depth_cap:
                continue
            ctx = _make_ctx(st, smem, library)
            for move in legal_moves(spec, st, smem, library):
                expanded += 1
                if expanded > expansion_cap:
                    raise NoSolution(f"{spec.name}: exceeded {expansion_cap} expansions")
                try:
                    nxt = _apply_move(move, st, library)
                except (ActionError, NoBehavior):
                    continue
                nctx = _make_ctx(nxt, smem, library)
                if nctx.preds in seen:
                    continue
                seen.add(nctx.preds)
                if goal_met(spec, nctx):
                    return path + [move]
                next_frontier.append((nxt, path + [move]))
        frontier = next_frontier
    raise NoSolution(f"{spec.name}: search space exhausted")


# ---------------------------------------------------------------------------
# acquisition dialogue (runs as a session routine)


def acquire_spec(session, name: str):
    """Generator routine implementing the verbatim question protocol:
    per action verb -> parameters -> per-parameter conditions, then goals,
    each phase closed by 'finished'."""
    from .kernel import Ask

    seg = session.stack.push("acquire-problem-spec", {"name": name})
    actions: list[SpecAction] = []
    while True:
        verb = yield from _spec_verb(session)
        params: list[SpecParam] = []
        conditions: list[Clause] = []
        while True:
            tree, _ = yield Ask(SPEC_QUESTIONS["parameter"], "problem-spec")
            if isinstance(tree, MetaReply) and tree.word in ("finished", "no"):
                break
            if not (isinstance(tree, TeachingReply) and tree.np is not None):
                session._say("Please describe the parameter, like 'a block'.")
                continue
            params.append(SpecParam(len(params) + 1, tree.np.noun,
                                    tree.np.adjectives))
            while True:
                tree, _ = yield Ask(SPEC_QUESTIONS["condition"], "problem-spec")
                if isinstance(tree, MetaReply) and tree.word in ("finished", "no"):
                    break
                if isinstance(tree, TeachingReply) and tree.clause is not None:
                    conditions.append(tree.clause)
                else:
                    session._say("Please state the condition as a sentence.")
        actions.append(SpecAction(verb, tuple(params), tuple(conditions)))
        tree, _ = yield Ask(SPEC_QUESTIONS["action"], "problem-spec")
        if not (isinstance(tree, MetaReply) and tree.word == "yes"):
            break

    goals: list[tuple[Clause, ...]] = []
    while True:
        tree, _ = yield Ask(SPEC_QUESTIONS["goal"], "problem-spec")
        if isinstance(tree, MetaReply) and tree.word in ("finished", "no"):
            break
        if isinstance(tree, GoalStatement):
            goals.append(tree.clauses)
        else:
            session._say("Please state the goal, starting with 'the goal is'.")

    spec = ProblemSpec(name, actions, goals)
    spec.validate(session.smem)
    session.specs[name] = spec
    seg.satisfied = True
    session.stack.pop()
    return spec


def _spec_verb(session):
    from .dialogue import ImpasseRecord, generate_question
    from .kernel import Ask

    while True:
        tree, _ = yield Ask(SPEC_QUESTIONS["verb"], "problem-spec")
        if not (isinstance(tree, TeachingReply) and tree.verb is not None):
            session._say("Please name the verb, like 'move'.")
            continue
        verb = tree.verb
        try:
            session.smem.retrieve(concepts.verb_cue(verb))
            return verb
        except RetrievalFailure:
            pass
        # unknown verb: ask for a demonstration and learn the task first
        question = generate_question(ImpasseRecord("unknown-verb", {"verb": verb}))
        tree, msg = yield Ask(question, "problem-spec")
        if isinstance(tree, Imperative):
            yield from session._perform_task(tree, msg.pointing, depth=1)
        try:
            session.smem.retrieve(concepts.verb_cue(verb))
            return verb
        except RetrievalFailure:
            session._say(f"I still do not know how to {verb}.")
