"""Generalized head-inward recognizer over tree right-hand sides.

Stack symbols carry sets of trees and rules, selected and refined by
closure/goto operations in the style of LR state construction: `closure`
adds every rule whose left-hand side labels the root of something already
in the set, `goto` selects by root symbol, `gotoleft`/`gotoright` select
by structural equality of a subtree.  Trees play the role of kernel items,
rules the role of nonkernel items.

Four item shapes track how much of the selected trees has been found,
over an outer window and an inner recognized span:

  * full      [i, k, Q, m, j] - only the root, over (k, m]
  * rightopen [k, Q, m, j]    - left subtree and root, right still open
  * leftopen  [i, k, Q, m]    - root and right subtree, left still open
  * done      [k, t, m]       - a single tree or rule, completely derived

The extra trailing tag fields keep the shapes from comparing equal as
plain tuples; they never vary.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Union

from .engine import Automaton, Clause
from .grammar import BOTTOM_BASE, START_PRIME_BASE, _fresh
from .transform import (GenHeadGrammar, GenHeadRule, Tree, bracket_symbol,
                        tree_to_text)

TreeOrRule = Union[Tree, GenHeadRule]


class FullItem(NamedTuple):
    i: int
    k: int
    q: frozenset
    m: int
    j: int
    tag: str = "fu"


class RightOpenItem(NamedTuple):
    k: int
    q: frozenset
    m: int
    j: int
    tag: str = "ro"


class LeftOpenItem(NamedTuple):
    i: int
    k: int
    q: frozenset
    m: int
    tag: str = "lo"


class DoneItem(NamedTuple):
    k: int
    t: TreeOrRule
    m: int
    tag: str = "dn"


class YldInconsistencyError(RuntimeError):
    """Two elements of one item disagree about its derived contribution;
    only an engine bug can produce such an item."""


def _tree_of(element: TreeOrRule) -> Tree:
    return element.rhs if isinstance(element, GenHeadRule) else element


def closure(g: GenHeadGrammar, q) -> frozenset:
    """Least superset of `q` also containing every rule of the grammar
    whose left-hand side labels the root of a member (or of a member
    rule's right-hand side)."""
    out = set(q)
    work = list(out)
    seen_roots = set()
    while work:
        element = work.pop()
        root = _tree_of(element).root
        if root in seen_roots:
            continue
        seen_roots.add(root)
        for rid in g.rules_by_lhs.get(root, ()):
            rule = g.rules[rid]
            if rule not in out:
                out.add(rule)
                work.append(rule)
    return frozenset(out)


def goto(q, x: str) -> frozenset:
    """Members of `q` whose main head (root symbol) is `x`."""
    return frozenset(e for e in q if _tree_of(e).root == x)


def gotoleft(q, subtree: Optional[Tree]) -> frozenset:
    """Members of `q` whose left subtree equals `subtree` structurally
    (None selects members with no left subtree)."""
    return frozenset(e for e in q if _tree_of(e).left == subtree)


def gotoright(q, subtree: Optional[Tree]) -> frozenset:
    return frozenset(e for e in q if _tree_of(e).right == subtree)


def left_set(g: GenHeadGrammar, q) -> frozenset:
    """Closure of the left subtrees of `q`: what to look for when setting
    out to recognize the left parts."""
    return closure(g, {_tree_of(e).left for e in q if _tree_of(e).left is not None})


def right_set(g: GenHeadGrammar, q) -> frozenset:
    return closure(g, {_tree_of(e).right for e in q if _tree_of(e).right is not None})


def _render_element(element):
    if isinstance(element, GenHeadRule):
        return "%s -> %s" % (element.lhs, tree_to_text(element.rhs))
    return tree_to_text(element)


def yld(item) -> tuple:
    """Sentential-form contribution of a reachable item, over the symbols
    of the flattened grammar (pending subtrees as bracket nonterminals).

    All elements of an item agree on the result; disagreement raises
    `YldInconsistencyError` since it would mean the item is not reachable.
    """
    if type(item) is DoneItem:
        elements = [item.t]
    else:
        elements = sorted(item.q, key=_sort_key_generic)
        if not elements:
            raise YldInconsistencyError("empty item")

    def contribution(element):
        t = _tree_of(element)
        if type(item) is FullItem:
            return (t.root,)
        if type(item) is RightOpenItem:
            left = () if t.left is None else (bracket_symbol(t.left),)
            return left + (t.root,)
        if type(item) is LeftOpenItem:
            right = () if t.right is None else (bracket_symbol(t.right),)
            return (t.root,) + right
        left = () if t.left is None else (bracket_symbol(t.left),)
        right = () if t.right is None else (bracket_symbol(t.right),)
        return left + (t.root,) + right

    results = {contribution(e) for e in elements}
    if len(results) != 1:
        raise YldInconsistencyError(
            "elements disagree: %s" % ", ".join(sorted(map(str, results))))
    return results.pop()


def _sort_key_generic(element):
    if isinstance(element, GenHeadRule):
        return (1, element.lhs, tree_to_text(element.rhs))
    return (0, "", tree_to_text(element))


def build_ghi(g: GenHeadGrammar) -> Automaton:
    start_prime = _fresh(START_PRIME_BASE, g.symbols)
    bottom = _fresh(BOTTOM_BASE, g.symbols | {start_prime})
    start_rule = GenHeadRule(start_prime, Tree(bottom, None, Tree(g.start)))

    rule_order = {r: idx for idx, r in enumerate(g.rules)}
    rule_order[start_rule] = -1

    def sort_key(element):
        if isinstance(element, GenHeadRule):
            return (1, rule_order.get(element, len(rule_order)), "")
        return (0, 0, tree_to_text(element))

    # The Q universe reachable on one grammar is small; memoise the set
    # operations so repeated scans do not recompute closures.
    left_cache = {}
    right_cache = {}
    goto_cache = {}

    def left_of(q):
        out = left_cache.get(q)
        if out is None:
            out = left_cache[q] = left_set(g, q)
        return out

    def right_of(q):
        out = right_cache.get(q)
        if out is None:
            out = right_cache[q] = right_set(g, q)
        return out

    def goto_sym(q, x):
        key = (q, x)
        out = goto_cache.get(key)
        if out is None:
            out = goto_cache[key] = goto(q, x)
        return out

    def make_init(n):
        return RightOpenItem(-1, frozenset((start_rule,)), 0, n)

    def make_fin(n):
        return DoneItem(-1, start_rule, n)

    # -- 1a..1d: empty-subtree conversions ---------------------------------

    def clause_1a(stack, ctx):
        top = stack[-1]
        if type(top) is not FullItem:
            return
        q2 = gotoright(top.q, None)
        if q2:
            yield 1, (LeftOpenItem(top.i, top.k, q2, top.m),), None

    def clause_1b(stack, ctx):
        top = stack[-1]
        if type(top) is not FullItem:
            return
        q2 = gotoleft(top.q, None)
        if q2:
            yield 1, (RightOpenItem(top.k, q2, top.m, top.j),), None

    def clause_1c(stack, ctx):
        top = stack[-1]
        if type(top) is not RightOpenItem:
            return
        for t in sorted(gotoright(top.q, None), key=sort_key):
            yield 1, (DoneItem(top.k, t, top.m),), None

    def clause_1d(stack, ctx):
        top = stack[-1]
        if type(top) is not LeftOpenItem:
            return
        for t in sorted(gotoleft(top.q, None), key=sort_key):
            yield 1, (DoneItem(top.k, t, top.m),), None

    # -- 2/3: head scans into a pending subtree window ----------------------

    def scan(shape, rightward):
        def matcher(stack, ctx):
            top = stack[-1]
            if type(top) is not shape:
                return
            if rightward:
                base, lo, hi = right_of(top.q), top.m, top.j
            else:
                base, lo, hi = left_of(top.q), top.i, top.k
            for p in range(lo + 1, hi + 1):
                q2 = goto_sym(base, ctx.tokens[p - 1])
                if q2:
                    yield 1, (top, FullItem(lo, p - 1, q2, p, hi)), p
        return matcher

    # -- 4/5: attach a completed subtree -----------------------------------

    def attach_tree(shape, rightward):
        def matcher(stack, ctx):
            if len(stack) < 2:
                return
            top = stack[-1]
            below = stack[-2]
            if type(top) is not DoneItem or isinstance(top.t, GenHeadRule):
                return
            if type(below) is not shape:
                return
            if rightward:
                if below.m != top.k:
                    return
                q2 = gotoright(below.q, top.t)
            else:
                if below.k != top.m:
                    return
                q2 = gotoleft(below.q, top.t)
            if not q2:
                return
            if shape is FullItem:
                if rightward:
                    yield 2, (LeftOpenItem(below.i, below.k, q2, top.m),), None
                else:
                    yield 2, (RightOpenItem(top.k, q2, below.m, below.j),), None
            else:
                for t2 in sorted(q2, key=sort_key):
                    if rightward:
                        yield 2, (DoneItem(below.k, t2, top.m),), None
                    else:
                        yield 2, (DoneItem(top.k, t2, below.m),), None
        return matcher

    # -- 6/7: attach a completed rule as a new subtree root -----------------

    def attach_rule(shape, rightward):
        def matcher(stack, ctx):
            if len(stack) < 2:
                return
            top = stack[-1]
            below = stack[-2]
            if type(top) is not DoneItem or not isinstance(top.t, GenHeadRule):
                return
            if type(below) is not shape:
                return
            if rightward:
                if not below.m <= top.k:
                    return
                q2 = goto_sym(right_of(below.q), top.t.lhs)
                if q2:
                    yield 1, (FullItem(below.m, top.k, q2, top.m, below.j),), None
            else:
                if not top.m <= below.k:
                    return
                q2 = goto_sym(left_of(below.q), top.t.lhs)
                if q2:
                    yield 1, (FullItem(below.i, top.k, q2, top.m, below.k),), None
        return matcher

    clauses = (
        Clause("1a", clause_1a),
        Clause("1b", clause_1b),
        Clause("1c", clause_1c),
        Clause("1d", clause_1d),
        Clause("2a", scan(FullItem, True)),
        Clause("2b", scan(FullItem, False)),
        Clause("3a", scan(RightOpenItem, True)),
        Clause("3b", scan(LeftOpenItem, False)),
        Clause("4a", attach_tree(FullItem, True)),
        Clause("4b", attach_tree(FullItem, False)),
        Clause("5a", attach_tree(RightOpenItem, True)),
        Clause("5b", attach_tree(LeftOpenItem, False)),
        Clause("6a", attach_rule(FullItem, True)),
        Clause("6b", attach_rule(FullItem, False)),
        Clause("7a", attach_rule(RightOpenItem, True)),
        Clause("7b", attach_rule(LeftOpenItem, False)),
    )

    def render_item(item):
        kind = type(item)
        if kind is DoneItem:
            return "[%d, %s, %d]" % (item.k, _render_element(item.t), item.m)
        body = "{%s}" % ", ".join(
            _render_element(e) for e in sorted(item.q, key=sort_key))
        if kind is FullItem:
            return "[%d, %d, %s, %d, %d]" % (item.i, item.k, body, item.m, item.j)
        if kind is RightOpenItem:
            return "[%d, %s, %d, %d]" % (item.k, body, item.m, item.j)
        return "[%d, %d, %s, %d]" % (item.i, item.k, body, item.m)

    def collapse_rows(steps):
        """Display convention: the two empty-subtree conversions finishing a
        bare tree merge into a single '1a, 1d' row."""
        rows = []
        idx = 0
        while idx < len(steps):
            step = steps[idx]
            if (step.label == "1a" and idx + 1 < len(steps)
                    and steps[idx + 1].label == "1d"
                    and type(steps[idx + 1].stack[-1]) is DoneItem
                    and not isinstance(steps[idx + 1].stack[-1].t, GenHeadRule)):
                rows.append(("1a, 1d", steps[idx + 1].stack))
                idx += 2
            else:
                rows.append((step.label, step.stack))
                idx += 1
        return rows

    return Automaton("ghi", clauses, make_init, make_fin, render_item,
                     (len(g.rules) + 1, len(g.nonterminals) + 1),
                     collapse_rows=collapse_rows)
