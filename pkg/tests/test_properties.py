"""Property tests: serialization is total and stable over generated data,
and the parser/pretty-printer agree over the generated command language."""

import dataclasses
import string

from hypothesis import given, settings
from hypothesis import strategies as st

from tabletutor.concepts import ActionRef
from tabletutor.grammar import parse, pretty
from tabletutor.memories import (
    NODE_TYPES,
    ConceptGraph,
    graph_to_lines,
    graphs_from_lines,
)
from tabletutor.rules import BehaviorRule, PredPattern, rule_to_lines, rules_from_lines

names = st.text(alphabet=string.ascii_lowercase + "-", min_size=1, max_size=8) \
    .filter(lambda s: s.strip("-") == s)
# attribute values may contain spaces ("pick up"); quoting must survive
values = st.text(alphabet=string.ascii_lowercase + "- ", min_size=1, max_size=12) \
    .filter(lambda s: s.strip("- ") == s)


@st.composite
def graphs(draw):
    g = ConceptGraph()
    n = draw(st.integers(min_value=1, max_value=6))
    ids = [f"n{i}" for i in range(n)]
    for nid in ids:
        attrs = draw(st.dictionaries(names, values, max_size=3))
        # "map" nodes carry structural invariants; sample the free ones
        ntype = draw(st.sampled_from(sorted(NODE_TYPES - {"map"})))
        g.add_node(nid, ntype, **attrs)
    for _ in range(draw(st.integers(min_value=0, max_value=8))):
        src = draw(st.sampled_from(ids))
        dst = draw(st.sampled_from(ids))
        g.add_edge(src, dst_label := draw(names), dst)
    return g


args = st.tuples(st.sampled_from(["slot", "const"]), names)


@st.composite
def rules(draw):
    conds = tuple(
        PredPattern(draw(names),
                    tuple(draw(st.lists(args, max_size=2))),
                    draw(st.booleans()))
        for _ in range(draw(st.integers(min_value=0, max_value=4))))
    action = ActionRef(draw(values), tuple(draw(st.lists(args, max_size=2))),
                       draw(st.none() | names),
                       draw(st.integers(min_value=0, max_value=5)))
    return BehaviorRule(draw(names), draw(st.sampled_from(["propose", "prefer"])),
                        conds, action)


@given(graphs())
@settings(max_examples=200)
def test_graph_serialization_is_stable(g):
    (back,) = graphs_from_lines(graph_to_lines(g))
    assert graph_to_lines(back) == graph_to_lines(g)
    assert back.isomorphic_to(g)


@given(rules())
@settings(max_examples=200)
def test_rule_serialization_is_exact(rule):
    (back,) = rules_from_lines(rule_to_lines(rule))
    assert back == dataclasses.replace(rule, provenance="")


commands = st.builds(
    lambda verb, det, adjs, noun, dest: f"{verb} {det} {' '.join(adjs + [noun])}"
    + (f" to the {dest}" if dest else ""),
    st.sampled_from(["move", "shift", "store", "pick up"]),
    st.sampled_from(["the", "a"]),
    st.lists(st.sampled_from(["red", "blue", "green", "small", "large"]),
             max_size=2, unique=True),
    st.sampled_from(["cylinder", "cube", "sphere", "block", "triangle"]),
    st.none() | st.sampled_from(["pantry", "garbage", "table", "stove"]))


@given(commands)
@settings(max_examples=200)
def test_parse_pretty_fixed_point(text):
    tree = parse(text)
    assert parse(pretty(tree)) == tree
