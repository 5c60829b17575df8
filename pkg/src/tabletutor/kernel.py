"""The learner session: perceive-decide-act kernel, impasse handling, and the
declarative acquisition routines.

Acquisition routines are generators that yield `Ask` requests; the session
suspends until the expert's reply arrives and is routed to the innermost
routine via the segment stack. Every operator selection is counted into a
capability category so knowledge presets can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Generator, Optional

from . import concepts, grammar, ground, presets
from .concepts import Arg
from .dialogue import (
    ImpasseRecord,
    InteractionStack,
    Message,
    generate_question,
)
from .grammar import GoalStatement, Imperative, MetaReply, TeachingReply
from .memories import (
    ConceptGraph,
    Episode,
    EpisodicMemory,
    Event,
    SemanticMemory,
    WorkingMemory,
)
from .predicates import Predicate, attribute_predicates, extract_predicates
from .rules import (
    GroundOp,
    NoBehavior,
    ProjectionFailure,
    TaskLibrary,
    check_desired,
    ground_ref,
    instantiate_goal,
    proceduralize,
    replay_initial_state,
)
from .world import ActionError, WorldState

# capability categories (operator selections)
CAT_IM = "interaction-management"
CAT_LR = "lexical-referential"
CAT_OSL = "object-spatial-learning"
CAT_TA = "task-acquisition"
CAT_TE = "task-execution"
CATEGORIES = (CAT_IM, CAT_LR, CAT_OSL, CAT_TA, CAT_TE)

# utterance acquisition categories
UCATS = ("object-attribute", "spatial-relation", "goal", "action", "problem-spec")

MAX_TASK_DEPTH = 8
MAX_INSTRUCTED_STEPS = 30
MAX_REASKS = 3


@dataclass
class Metrics:
    operators: dict[str, int] = field(default_factory=lambda: {c: 0 for c in CATEGORIES})
    utterances: dict[str, int] = field(default_factory=lambda: {u: 0 for u in UCATS})
    cycles: int = 0

    def as_dict(self) -> dict:
        return {"operators": dict(self.operators),
                "utterances": dict(self.utterances),
                "cycles": self.cycles}


@dataclass
class Ask:
    text: str
    category: Optional[str] = None  # utterance category, None = uncounted


Reply = tuple[grammar.ParseTree, Message]
Routine = Generator[Ask, Reply, object]


class Session:
    def __init__(self, scene: WorldState, preset: str = "O+S",
                 knowledge: Optional[tuple[list[ConceptGraph], list]] = None):
        self.world = scene
        self.smem = SemanticMemory()
        from .rules import RuleBase

        self.rule_base = RuleBase()
        if knowledge is not None:
            graphs, rules = knowledge
            for g in graphs:
                self.smem.store(g)
            self.rule_base.extend(list(rules))
            self._ensure_location_maps(scene)
        else:
            presets.load_preset(self.smem, preset, scene)
        self.lexicon = grammar.Lexicon(
            extra_nouns={l.name for l in scene.locations})
        self.stack = InteractionStack()
        self.epmem = EpisodicMemory()
        self.wm = WorkingMemory()
        self.metrics = Metrics()
        self.transcript: list[Message] = []
        self._seq = 0
        self._ep_index = 0
        self.driver: Optional[Routine] = None
        self.pending: Optional[Ask] = None
        self._created_gids: list[int] = []
        self.specs: dict[str, object] = {}
        self.library = TaskLibrary(self.smem, self.rule_base, self._vocab,
                                   on_select=self._on_rule_select,
                                   on_action=self._on_world_action)
        self.sim_library = TaskLibrary(self.smem, self.rule_base, self._vocab)
        self._perceive()

    # -- plumbing ---------------------------------------------------------

    def _ensure_location_maps(self, scene: WorldState) -> None:
        # imported knowledge may come from a scene with other location names
        for loc in scene.locations:
            try:
                ground.resolve_word(self.smem, loc.name, "noun")
            except ground.UnknownWord:
                ground.learn_word(self.smem, loc.name, "noun", loc.name,
                                  "location-name")

    def _vocab(self):
        return ground.relation_vocabulary(self.smem)

    def _perceive(self) -> None:
        self.wm.world = self.world
        self.wm.predicates = extract_predicates(self.world, self._vocab())
        self.wm.attributes = attribute_predicates(self.world)

    def beliefs(self) -> frozenset[Predicate]:
        return self.wm.predicates | self.wm.attributes

    def select(self, category: str) -> None:
        self.metrics.operators[category] += 1
        self.metrics.cycles += 1

    def _record(self, kind: str, detail: str = "") -> None:
        self.epmem.record(Episode(
            self._ep_index, self.world,
            extract_predicates(self.world, self._vocab()) | self.wm.attributes,
            Event(kind, detail)))
        self._ep_index += 1

    def _say(self, text: str) -> Message:
        msg = Message("learner", text, seq=self._seq)
        self._seq += 1
        self.transcript.append(msg)
        self._record("utterance", f"learner: {text}")
        return msg

    def _on_rule_select(self, rule) -> None:
        self.select(CAT_TE)

    def _on_world_action(self, state: WorldState, action) -> None:
        self.world = state
        self._perceive()
        self.select(CAT_TE)
        self._record("action", str(action))

    # -- expert interface -------------------------------------------------

    @property
    def awaiting_reply(self) -> bool:
        return self.pending is not None

    def submit(self, text: str, pointing: Optional[str] = None) -> list[Message]:
        """Deliver one expert utterance; returns the learner's responses."""
        start = len(self.transcript)
        msg = Message("expert", text, pointing, seq=self._seq)
        self._seq += 1
        self.transcript.append(msg)
        self._record("utterance", f"expert: {text}")
        self.select(CAT_IM)  # attend to the message
        try:
            self.select(CAT_LR)  # parse
            tree = grammar.parse(text, self.lexicon)
        except grammar.ParseError as exc:
            self._say(f"I do not understand. ({exc})")
            return self.transcript[start:]

        if isinstance(tree, MetaReply) and tree.word == "stop":
            self._abort()
            self._say("Okay, I will stop.")
            return self.transcript[start:]

        if self.pending is not None:
            ask = self.pending
            if ask.category:
                # the question and this reply both belong to the exchange
                self.metrics.utterances[ask.category] += 2
            self.pending = None
            self._advance((tree, msg))
        elif isinstance(tree, Imperative):
            self._created_gids = []
            self.driver = self._perform_task(tree, pointing, depth=0)
            self._advance(None)
        else:
            self._say("I was not expecting that.")
        return self.transcript[start:]

    def begin_spec(self, name: str) -> list[Message]:
        """Start the problem-specification dialogue for a named game."""
        from . import games

        start = len(self.transcript)
        self._created_gids = []
        self.driver = games.acquire_spec(self, name)
        self._advance(None)
        return self.transcript[start:]

    def solve_spec(self, name: str, depth_cap: int = 64):
        from . import games

        return games.solve(self.specs[name], self.world, self.smem,
                           self.sim_library, depth_cap=depth_cap)

    def _advance(self, value: Optional[Reply]) -> None:
        assert self.driver is not None
        try:
            req = self.driver.send(value)
        except StopIteration:
            self.driver = None
            self.pending = None
            self.stack.reset()
            return
        self.pending = req
        self.select(CAT_IM)  # pose a question
        self._say(req.text)

    def _abort(self) -> None:
        if self.driver is not None:
            self.driver.close()
            self.driver = None
        self.pending = None
        self.stack.reset()
        # partial concept graphs without goals are dropped; ones with goals stay
        for gid in self._created_gids:
            entry = self.smem._store.get(gid)
            if entry is not None and not concepts.has_goal(entry.graph):
                del self.smem._store[gid]
        self._created_gids = []

    # -- comprehension ----------------------------------------------------

    def _comprehend(self, tree: Imperative, pointing: Optional[str]) -> Routine:
        """Index the verb and ground every argument, acquiring missing words
        on the way. Returns a GroundedCommand or None."""
        overrides: dict[str, str] = {}
        for _ in range(12):
            try:
                self.select(CAT_LR)
                return ground.index_verb(tree, self.wm, self.smem,
                                         pointing=pointing, overrides=overrides)
            except ground.UnknownVerb as exc:
                ImpasseRecord("unknown-verb", {"verb": exc.verb})
                self.select(CAT_TA)
                g = concepts.new_verb_map(exc.verb, list(exc.roles))
                gid = self.smem.store(g)
                self._created_gids.append(gid)
            except ground.UnknownWord as exc:
                ok = yield from self._acquire_word(exc.word, exc.cls)
                if not ok:
                    return None
            except ground.AmbiguousReferent as exc:
                entity = yield from self._disambiguate(exc)
                if entity is None:
                    return None
                overrides[exc.np.text()] = entity
            except ground.NoReferent as exc:
                self._say(f"I cannot find that. ({exc})")
                return None
        return None

    def _ground_term_interactive(self, term, pointing=None) -> Routine:
        """Ground one term, teaching unknown words as needed. None on failure."""
        for _ in range(8):
            try:
                self.select(CAT_LR)
                return ground.ground_term(term, self.wm, self.smem, pointing)
            except ground.UnknownWord as exc:
                ok = yield from self._acquire_word(exc.word, exc.cls)
                if not ok:
                    return None
            except ground.GroundingError as exc:
                self._say(f"I cannot find that. ({exc})")
                return None
        return None

    # -- the task routine -------------------------------------------------

    def _perform_task(self, tree: Imperative, pointing: Optional[str],
                      depth: int) -> Routine:
        """Comprehend and execute (or be taught) one command. Returns the
        GroundedCommand on success, None on failure."""
        if depth > MAX_TASK_DEPTH:
            self._say("I am sorry, this is getting too complicated.")
            return None
        pushed = depth > 0
        if pushed:
            self.stack.push("perform-task", {"verb": tree.verb}, originator="expert")

        cmd = yield from self._comprehend(tree, pointing)
        if cmd is None:
            return self._finish(pushed, None)

        tcn = cmd.graph
        prim = concepts.primitive_of(tcn)
        if prim is not None:
            roles = concepts.roles_of(tcn)
            ref = concepts.ActionRef(
                cmd.verb,
                tuple(("const", cmd.bindings[r]) for r in roles),
                relation="in" if "in" in roles else None)
            try:
                self.world, _ = self.library.run_op(self.world, ground_ref(ref, {}))
                self._perceive()
            except ActionError as exc:
                self._say(f"I cannot do that. ({exc})")
                return self._finish(pushed, None)
            return self._finish(pushed, cmd)

        self.select(CAT_TE)  # propose and select the task operator
        self._record("task-begin", cmd.verb)

        if not concepts.has_goal(tcn):
            ImpasseRecord("unknown-goal", {"verb": cmd.verb})
            ok = yield from self._acquire_goal(cmd)
            if not ok:
                return self._finish(pushed, None)

        self.select(CAT_TE)  # generate the desired state
        desired = instantiate_goal(tcn, cmd.bindings)
        bad = [a for p in desired for a in p.args
               if not (self.world.has_object(a) or self.world.has_location(a))]
        if bad:
            self._say(f"I cannot find {bad[0]} here.")
            return self._finish(pushed, None)

        if check_desired(self.beliefs(), desired):
            return self._finish(pushed, cmd)

        if self.rule_base.has_behavior(cmd.verb):
            try:
                self.world, _ = self.library.execute_task(tcn, cmd.bindings, self.world)
                self._perceive()
            except NoBehavior:
                pass
            except ActionError as exc:
                self._say(f"I cannot do that. ({exc})")
                return self._finish(pushed, None)
            if check_desired(self.beliefs(), desired):
                self._record("task-end", cmd.verb)
                return self._finish(pushed, cmd)

        ok = yield from self._acquire_actions(cmd, desired, depth)
        if not ok:
            return self._finish(pushed, None)
        self._record("task-end", cmd.verb)

        # proceduralize: explain the instructed execution and compile rules
        self.select(CAT_TA)
        try:
            initial = replay_initial_state(self.epmem, cmd.verb)
            new_rules = proceduralize(tcn, cmd.bindings, initial,
                                      self.sim_library, lesson_id=cmd.verb)
            self.rule_base.retract_task(cmd.verb)
            self.rule_base.extend(new_rules)
        except ProjectionFailure:
            self._say(f"I could not work out a general way to {cmd.verb}.")
        return self._finish(pushed, cmd)

    def _finish(self, pushed: bool, result):
        if pushed:
            self.stack.top.satisfied = True
            self.stack.pop()
        return result

    # -- acquisition routines ---------------------------------------------

    def _acquire_goal(self, cmd: ground.GroundedCommand) -> Routine:
        seg = self.stack.push("acquire-goal", {"graph-id": cmd.graph_id,
                                               "verb": cmd.verb})
        question = generate_question(ImpasseRecord("unknown-goal", {"verb": cmd.verb}))
        for _ in range(MAX_REASKS + 1):
            tree, msg = yield Ask(question, "goal")
            if not isinstance(tree, GoalStatement):
                self._say("Please tell me the goal, for example "
                          "'the goal is the block is in the pantry'.")
                continue
            ok = True
            for clause in tree.clauses:
                added = yield from self._goal_clause(cmd, clause, msg)
                if not added:
                    ok = False
                    break
            if not ok:
                continue
            self.select(CAT_TA)
            self.smem.replace(cmd.graph_id, cmd.graph)
            seg.satisfied = True
            self.stack.pop()
            return True
        self.stack.top.satisfied = True
        self.stack.pop()
        return False

    def _goal_clause(self, cmd, clause: grammar.Clause, msg: Message) -> Routine:
        subject = yield from self._ground_term_interactive(clause.subject, msg.pointing)
        if subject is None:
            return False
        if clause.kind == "rel":
            for _ in range(2):
                if clause.prep in self._vocab().relations:
                    break
                ImpasseRecord("unknown-relation", {"word": clause.prep})
                ok = yield from self._acquire_relation(clause.prep)
                if not ok:
                    return False
            obj = yield from self._ground_term_interactive(clause.obj, msg.pointing)
            if obj is None:
                return False
            name, args = clause.prep, [subject, obj]
        else:
            name, args = clause.attr, [subject]
            from .grammar import STATE_ADJECTIVES

            if name not in STATE_ADJECTIVES:
                for _ in range(2):
                    try:
                        _, name = ground.resolve_word(self.smem, clause.attr, "adjective")
                        break
                    except ground.UnknownWord as exc:
                        ok = yield from self._acquire_word(exc.word, exc.cls)
                        if not ok:
                            return False
        concepts.add_goal_predicate(
            cmd.graph, name, [self._abstract(cmd, a) for a in args],
            positive=clause.positive)
        return True

    def _abstract(self, cmd, entity: str) -> Arg:
        for role in sorted(cmd.bindings):
            if cmd.bindings[role] == entity:
                return ("slot", role)
        return ("const", entity)

    def _acquire_actions(self, cmd, desired, depth: int) -> Routine:
        question = generate_question(ImpasseRecord("no-behavior", {}))
        for _ in range(MAX_INSTRUCTED_STEPS):
            self._perceive()
            if check_desired(self.beliefs(), desired):
                return True
            ImpasseRecord("no-behavior", {"verb": cmd.verb})
            seg = self.stack.push("acquire-action", {"graph-id": cmd.graph_id,
                                                     "verb": cmd.verb})
            sub_cmd = None
            for _ in range(MAX_REASKS):
                tree, msg = yield Ask(question, "action")
                if not isinstance(tree, Imperative):
                    self._say("Please tell me an action to take.")
                    continue
                sub_cmd = yield from self._perform_task(tree, msg.pointing, depth + 1)
                break
            seg.satisfied = True
            self.stack.pop()
            if sub_cmd is not None:
                self.select(CAT_TA)
                sub_roles = concepts.roles_of(sub_cmd.graph)
                args = [self._abstract(cmd, sub_cmd.bindings[r]) for r in sub_roles]
                concepts.add_ps_action(cmd.graph, sub_cmd.verb, args,
                                       relation=self._relation_of(sub_cmd))
                self.smem.replace(cmd.graph_id, cmd.graph)
        return check_desired(self.beliefs(), desired)

    def _relation_of(self, sub_cmd) -> Optional[str]:
        if "in" in sub_cmd.bindings:
            return "in"
        goal = concepts.goal_predicates(sub_cmd.graph)
        vocab = self._vocab().relations
        for gp in goal:
            if gp.name in vocab:
                return gp.name
        return None

    def _acquire_word(self, word: str, cls: str) -> Routine:
        seg = self.stack.push("acquire-word", {"word": word})
        question = generate_question(ImpasseRecord("unknown-word", {"word": word}))
        try:
            for _ in range(MAX_REASKS):
                tree, msg = yield Ask(question, "object-attribute")
                learned = self._integrate_word_teaching(word, cls, tree, msg)
                if learned:
                    seg.satisfied = True
                    return True
                self._say(f"Please point at something and say 'this is {word}' "
                          f"or 'this is a {word}'.")
            return False
        finally:
            self.stack.top.satisfied = True
            if self.stack.depth > 1:
                self.stack.pop()

    def _integrate_word_teaching(self, word: str, cls: str,
                                 tree, msg: Message) -> bool:
        if not isinstance(tree, TeachingReply) or tree.clause is None:
            return False
        clause = tree.clause
        if not isinstance(clause.subject, grammar.Deictic) or msg.pointing is None:
            return False
        taught = clause.attr
        if clause.kind != "attr" or taught != word:
            return False
        entity = msg.pointing
        if self.world.has_object(entity):
            obj = self.world.object(entity)
            if word in (obj.color, obj.size):
                kind, symbol = "attribute", word
            elif word == obj.shape:
                kind, symbol = "shape", word
            elif cls == "noun":
                kind, symbol = "any-object", word
            else:
                return False
        elif self.world.has_location(entity):
            if word == entity:
                kind, symbol = "location-name", entity
            elif cls == "noun":
                kind, symbol = "any-location", word
            else:
                return False
        else:
            return False
        self.select(CAT_OSL)
        ground.learn_word(self.smem, word, cls, symbol, kind)
        return True

    def _acquire_relation(self, word: str) -> Routine:
        seg = self.stack.push("acquire-relation", {"word": word})
        question = generate_question(ImpasseRecord("unknown-relation", {"word": word}))
        try:
            for _ in range(MAX_REASKS):
                tree, msg = yield Ask(question, "spatial-relation")
                if (not isinstance(tree, TeachingReply) or tree.clause is None
                        or tree.clause.kind != "rel" or tree.clause.prep != word
                        or not tree.clause.positive):
                    self._say(f"Please show me an example, like "
                              f"'the sphere is {word} the garbage'.")
                    continue
                clause = tree.clause
                a = yield from self._ground_term_interactive(clause.subject, msg.pointing)
                if a is None:
                    continue
                b = yield from self._ground_term_interactive(clause.obj, msg.pointing)
                if b is None:
                    continue
                from .predicates import pair_primitives

                box_a, kind_a = self._box_of(a)
                box_b, kind_b = self._box_of(b)
                prims = frozenset(pair_primitives(box_a, box_b) - {"near", "far"})
                self.select(CAT_OSL)
                ground.learn_relation(self.smem, word, prims, (kind_a, kind_b))
                self._perceive()
                seg.satisfied = True
                return True
            return False
        finally:
            self.stack.top.satisfied = True
            if self.stack.depth > 1:
                self.stack.pop()

    def _box_of(self, entity: str):
        if self.world.has_object(entity):
            return self.world.object(entity).bounds, "object"
        return self.world.location(entity).region, "location"

    def _disambiguate(self, exc: ground.AmbiguousReferent) -> Routine:
        seg = self.stack.push("disambiguate", {"noun": exc.np.noun})
        question = generate_question(ImpasseRecord("unresolvable-re",
                                                   {"noun": exc.np.noun}))
        try:
            for _ in range(MAX_REASKS):
                _, msg = yield Ask(question)
                if msg.pointing in exc.candidates:
                    self.select(CAT_LR)
                    seg.satisfied = True
                    return msg.pointing
                self._say("Please point at the one you mean.")
            return None
        finally:
            self.stack.top.satisfied = True
            if self.stack.depth > 1:
                self.stack.pop()
