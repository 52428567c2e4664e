"""Property group: closure over tree/rule sets is monotone and idempotent."""

import random

from hypothesis import given, settings, strategies as st

from headparse.corpus import random_gen_grammar
from headparse.recognizer_ghi import closure
from headparse.transform import subtrees


def _universe(g):
    """All trees occurring in the grammar plus all rules."""
    trees = []
    for r in g.rules:
        trees.extend(subtrees(r.rhs))
    return list(dict.fromkeys(trees)) + list(g.rules)


@st.composite
def grammar_and_subsets(draw):
    g = random_gen_grammar(random.Random(draw(st.integers(0, 10_000))))
    universe = _universe(g)
    picks = draw(st.lists(st.integers(0, len(universe) - 1), max_size=6))
    extra = draw(st.lists(st.integers(0, len(universe) - 1), max_size=4))
    return (g, frozenset(universe[i] for i in picks),
            frozenset(universe[i] for i in extra))


@settings(max_examples=80, deadline=None)
@given(grammar_and_subsets())
def test_closure_contains_argument(gqq):
    g, q, _ = gqq
    assert q <= closure(g, q)


@settings(max_examples=80, deadline=None)
@given(grammar_and_subsets())
def test_closure_idempotent(gqq):
    g, q, _ = gqq
    once = closure(g, q)
    assert closure(g, once) == once


@settings(max_examples=60, deadline=None)
@given(grammar_and_subsets())
def test_closure_monotone(gqq):
    g, q, extra = gqq
    assert closure(g, q) <= closure(g, q | extra)


@settings(max_examples=80, deadline=None)
@given(grammar_and_subsets())
def test_closure_adds_only_rules(gqq):
    g, q, _ = gqq
    added = closure(g, q) - q
    assert all(element in g.rules for element in added)
