"""Property group: goto-style selections return subsets of their argument."""

import random

from hypothesis import given, settings, strategies as st

from headparse import augment
from headparse.corpus import random_gen_grammar, random_head_grammar
from headparse.recognizer_ghi import (closure, goto, gotoleft, gotoright,
                                      left_set, right_set)
from headparse.recognizer_hi import (compute_relations, gotoleft2, gotoright1,
                                     gotoright2)
from headparse.transform import subtrees


@st.composite
def gen_grammar_and_set(draw):
    g = random_gen_grammar(random.Random(draw(st.integers(0, 10_000))))
    universe = []
    for r in g.rules:
        universe.extend(subtrees(r.rhs))
    universe = list(dict.fromkeys(universe)) + list(g.rules)
    picks = draw(st.lists(st.integers(0, len(universe) - 1), max_size=6))
    return g, frozenset(universe[i] for i in picks)


@settings(max_examples=80, deadline=None)
@given(gen_grammar_and_set(), st.sampled_from(["S", "A", "a", "b"]))
def test_goto_is_a_selection(gq, sym):
    _, q = gq
    assert goto(q, sym) <= q


@settings(max_examples=80, deadline=None)
@given(gen_grammar_and_set())
def test_subtree_selections_are_selections(gq):
    g, q = gq
    for element in list(q)[:3]:
        tree = element.rhs if hasattr(element, "rhs") else element
        assert gotoleft(q, tree.left) <= q
        assert gotoright(q, tree.right) <= q
    assert gotoleft(q, None) <= q and gotoright(q, None) <= q


@settings(max_examples=80, deadline=None)
@given(gen_grammar_and_set())
def test_side_sets_close_collected_subtrees(gq):
    g, q = gq
    for side_set, pick in ((left_set, lambda t: t.left),
                           (right_set, lambda t: t.right)):
        collected = {pick(e.rhs if hasattr(e, "rhs") else e) for e in q}
        collected.discard(None)
        assert side_set(g, q) == closure(g, frozenset(collected))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["a", "b"]))
def test_hi_goto1_returns_head_dotted_rules(seed, sym):
    g = random_head_grammar(random.Random(seed))
    aug = augment(g)
    rels = compute_relations(aug)
    q = frozenset({(aug.start_rule_id, 0, 1)})
    for element in gotoright1(aug, rels, q, sym):
        rid, ld, rd = element
        rule = aug.rules[rid]
        assert (ld, rd) == (rule.head, rule.head + 1)
        assert rule.head_symbol == sym


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["a", "b"]))
def test_hi_goto2_advances_have_preimages(seed, sym):
    g = random_head_grammar(random.Random(seed))
    aug = augment(g)
    rels = compute_relations(aug)
    q = frozenset({(rid, r.head, r.head + 1) for rid, r in enumerate(aug.rules)})
    for rid, ld, rd in gotoright2(aug, rels, q, sym):
        rule = aug.rules[rid]
        if (ld, rd) != (rule.head, rule.head + 1):
            assert (rid, ld, rd - 1) in q
            assert rule.rhs[rd - 1] == sym
    for rid, ld, rd in gotoleft2(aug, rels, q, sym):
        rule = aug.rules[rid]
        if (ld, rd) != (rule.head, rule.head + 1):
            assert (rid, ld + 1, rd) in q
            assert rule.rhs[ld] == sym
