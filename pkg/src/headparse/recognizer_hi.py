"""Head-inward recognizer over plain head grammars.

Stack symbols carry a *set* of double-dotted rules sharing one recognized
span, so alternatives stay merged until the grammar forces them apart,
the same way an LR state merges items.  Scanning an adjacent terminal and
starting a fresh rule whose leftmost member is that terminal (and also its
head) happen in one step; the gate for the fresh rules is the left
head-corner relation, the restriction of the head-corner relation to rules
whose head is leftmost (mirrored on the other side).

The clauses never pop the item they extend: a new item is pushed on top,
one per recognized member, and a reduction with an r-member rule pops the
r cumulative items above the context it grew from.  One consequence is
that the initial stack symbol is never popped, and the final reduction may
merge other still-live rules into the last item's set; a run therefore
accepts on the initial item topped by an item with the final spans whose
set contains the finished start rule.
"""

from __future__ import annotations

from typing import NamedTuple

from .engine import Automaton, Clause
from .grammar import (FULL, LEFT, RIGHT, AugmentedGrammar, HeadCornerRelation,
                      head_corner)


class HiItem(NamedTuple):
    i: int
    k: int
    q: frozenset  # of (rule id, left dot, right dot)
    m: int
    j: int


class Relations(NamedTuple):
    full: HeadCornerRelation
    left: HeadCornerRelation
    right: HeadCornerRelation


def compute_relations(aug: AugmentedGrammar) -> Relations:
    return Relations(head_corner(aug, FULL), head_corner(aug, LEFT),
                     head_corner(aug, RIGHT))


def _pending_nts(aug, q, rightward):
    """Nonterminals adjacent to the dotted region of any element of q."""
    out = set()
    for rid, ld, rd in q:
        rhs = aug.rules[rid].rhs
        sym = None
        if rightward:
            if rd < len(rhs):
                sym = rhs[rd]
        else:
            if ld > 0:
                sym = rhs[ld - 1]
        if sym is not None and sym in aug.nonterminals:
            out.add(sym)
    return out


def gotoright1(aug: AugmentedGrammar, rels: Relations, q, x) -> frozenset:
    """Rules with head `x`, startable next to a pending nonterminal of some
    element of `q` (full head-corner gate); dots placed around the head."""
    pend = _pending_nts(aug, q, True)
    if not pend:
        return frozenset()
    out = set()
    for rid in aug.rules_with_head.get(x, ()):
        r = aug.rules[rid]
        if any((r.lhs, b) in rels.full.pairs for b in pend):
            out.add((rid, r.head, r.head + 1))
    return frozenset(out)


def gotoleft1(aug: AugmentedGrammar, rels: Relations, q, x) -> frozenset:
    pend = _pending_nts(aug, q, False)
    if not pend:
        return frozenset()
    out = set()
    for rid in aug.rules_with_head.get(x, ()):
        r = aug.rules[rid]
        if any((r.lhs, b) in rels.full.pairs for b in pend):
            out.add((rid, r.head, r.head + 1))
    return frozenset(out)


def gotoright2(aug: AugmentedGrammar, rels: Relations, q, x) -> frozenset:
    """Dot advances over `x` within `q`, plus fresh rules whose leftmost
    member is `x` and also the head (left head-corner gate)."""
    out = set()
    pend = _pending_nts(aug, q, True)
    if pend:
        for rid in aug.rules_with_head.get(x, ()):
            r = aug.rules[rid]
            if r.head == 0 and any((r.lhs, b) in rels.left.pairs for b in pend):
                out.add((rid, 0, 1))
    for rid, ld, rd in q:
        rhs = aug.rules[rid].rhs
        if rd < len(rhs) and rhs[rd] == x:
            out.add((rid, ld, rd + 1))
    return frozenset(out)


def gotoleft2(aug: AugmentedGrammar, rels: Relations, q, x) -> frozenset:
    out = set()
    pend = _pending_nts(aug, q, False)
    if pend:
        for rid in aug.rules_with_head.get(x, ()):
            r = aug.rules[rid]
            if r.head == len(r.rhs) - 1 and any(
                    (r.lhs, b) in rels.right.pairs for b in pend):
                out.add((rid, r.head, r.head + 1))
    for rid, ld, rd in q:
        rhs = aug.rules[rid].rhs
        if ld > 0 and rhs[ld - 1] == x:
            out.add((rid, ld - 1, rd))
    return frozenset(out)


def _render_hi(aug):
    from .recognizers_basic import Dotted, _dotted_text

    def render(item):
        elements = ", ".join(
            _dotted_text(aug, Dotted(0, 0, rid, ld, rd, 0, 0))
            for rid, ld, rd in sorted(item.q))
        return "[%d, %d, {%s}, %d, %d]" % (item.i, item.k, elements, item.m, item.j)
    return render


def build_hi(aug: AugmentedGrammar, rels: Relations = None) -> Automaton:
    if rels is None:
        rels = compute_relations(aug)
    rules = aug.rules

    def make_init(n):
        return HiItem(-1, -1, frozenset(((aug.start_rule_id, 0, 1),)), 0, n)

    def make_fin(n):
        return HiItem(-1, -1, frozenset(((aug.start_rule_id, 0, 2),)), n, n)

    def make_accepting(n):
        # The clauses never pop the initial item, and the final reduction
        # computes a maximal set that may merge other live rules into the
        # final item, so acceptance is: initial item below an item with the
        # final spans whose set contains the finished start rule.
        init = make_init(n)
        fin = make_fin(n)

        def accepting(stack):
            if len(stack) != 2 or stack[0] != init:
                return False
            top = stack[1]
            return ((top.i, top.k, top.m, top.j)
                    == (fin.i, fin.k, fin.m, fin.j) and fin.q <= top.q)
        return accepting

    def new_head_side(rightward):
        goto1 = gotoright1 if rightward else gotoleft1

        def matcher(stack, ctx):
            top = stack[-1]
            if rightward:
                lo, hi = top.m, top.j
                positions = range(top.m + 2, top.j + 1)  # adjacency is clause 2's job
            else:
                lo, hi = top.i, top.k
                positions = range(top.i + 1, top.k)
            for p in positions:
                q2 = goto1(aug, rels, top.q, ctx.tokens[p - 1])
                if q2:
                    yield 1, (top, HiItem(lo, p - 1, q2, p, hi)), p
        return matcher

    def scan_side(rightward):
        goto2 = gotoright2 if rightward else gotoleft2

        def matcher(stack, ctx):
            top = stack[-1]
            if rightward:
                if top.m < top.j:
                    q2 = goto2(aug, rels, top.q, ctx.tokens[top.m])
                    if q2:
                        yield 1, (top, HiItem(top.i, top.k, q2, top.m + 1, top.j)), top.m + 1
            else:
                if top.i < top.k:
                    q2 = goto2(aug, rels, top.q, ctx.tokens[top.k - 1])
                    if q2:
                        yield 1, (top, HiItem(top.i, top.k - 1, q2, top.m, top.j)), top.k
        return matcher

    def _chained(chain):
        # cumulative member items grow outward, each span containing the last
        return all(chain[t].k >= chain[t + 1].k and chain[t].m <= chain[t + 1].m
                   for t in range(len(chain) - 1))

    def reduce_new_head_side(rightward):
        goto1 = gotoright1 if rightward else gotoleft1

        def matcher(stack, ctx):
            top = stack[-1]
            emitted = set()
            for rid, ld, rd in sorted(top.q):
                rhs = rules[rid].rhs
                if ld != 0 or rd != len(rhs):
                    continue
                size = len(rhs)
                if len(stack) < size + 1:
                    continue
                context = stack[-(size + 1)]
                if rightward:
                    if not context.m < top.k:
                        continue
                else:
                    if not top.m < context.k:
                        continue
                q2 = goto1(aug, rels, context.q, rules[rid].lhs)
                if not q2:
                    continue
                assert _chained(stack[len(stack) - size:])
                new = HiItem(top.i, top.k, q2, top.m, top.j)
                key = (size, new)
                if key not in emitted:
                    emitted.add(key)
                    yield size, (new,), None
        return matcher

    def reduce_advance_side(rightward):
        goto2 = gotoright2 if rightward else gotoleft2

        def matcher(stack, ctx):
            top = stack[-1]
            emitted = set()
            for rid, ld, rd in sorted(top.q):
                rhs = rules[rid].rhs
                if ld != 0 or rd != len(rhs):
                    continue
                size = len(rhs)
                if len(stack) < size + 1:
                    continue
                context = stack[-(size + 1)]
                if rightward:
                    if not (context.m == top.k or context.k == top.k):
                        continue
                else:
                    if not (context.k == top.m or context.m == top.m):
                        continue
                q2 = goto2(aug, rels, context.q, rules[rid].lhs)
                if not q2:
                    continue
                assert _chained(stack[len(stack) - size:])
                if rightward:
                    assert context.j == top.j
                    new = HiItem(context.i, context.k, q2, top.m, top.j)
                else:
                    assert context.i == top.i
                    new = HiItem(top.i, top.k, q2, context.m, context.j)
                key = (size, new)
                if key not in emitted:
                    emitted.add(key)
                    yield size, (new,), None
        return matcher

    clauses = (
        Clause("1a", new_head_side(True)),
        Clause("1b", new_head_side(False)),
        Clause("2a", scan_side(True)),
        Clause("2b", scan_side(False)),
        Clause("3a", reduce_new_head_side(True)),
        Clause("3b", reduce_new_head_side(False)),
        Clause("4a", reduce_advance_side(True)),
        Clause("4b", reduce_advance_side(False)),
    )
    return Automaton("hi", clauses, make_init, make_fin, _render_hi(aug),
                     (len(rules), len(aug.nonterminals)),
                     make_accepting=make_accepting)
