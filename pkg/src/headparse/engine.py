"""Depth-first execution of nondeterministic stack automata.

An automaton is an initial stack symbol, an accepting stack, and an
ordered list of clauses.  A clause inspects the top of the current stack
(together with the input) and proposes replacements for the topmost few
symbols; each proposal is one nondeterministic step.  The engine explores
the resulting configuration space depth first, taking clauses in their
listed order and input positions in ascending order, so runs and traces
are reproducible.  Stacks already seen are pruned: transitions read only
the stack, the input, and indexes stored inside items, so equal stacks
have equal futures.  Pruning plus explicit step/depth bounds turn would-be
infinite searches into either pruned duplicates or a distinct
resource-limit verdict; they never affect accept/reject outcomes on
searches that terminate.

Items carry the -1-based input positions used throughout this toolkit
directly (the bottom marker occupies the span (-1, 0]), with no internal
shifting, so printed traces read exactly like the items themselves.

Each configuration also remembers which input positions were consulted by
scanning steps along the path that discovered it.  These per-path sets are
what the correct-subsequence check in `headparse.oracle` inspects; sets
from different search branches are deliberately never merged, since only
an individual path's consultations are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple, Optional


class EngineError(RuntimeError):
    pass


class Verdict(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    RESOURCE_LIMIT = "resource-limit"


class RunContext(NamedTuple):
    tokens: tuple
    n: int


@dataclass(frozen=True)
class Clause:
    """A labelled transition schema.

    `matcher(stack, ctx)` yields one tuple per applicable instance:
    ``(matched, replacement, consulted)`` where `matched` is how many top
    items the instance consumes, `replacement` the items pushed in their
    place (bottom to top), and `consulted` the input position a scanning
    step read, or None.
    """

    label: str
    matcher: Callable


@dataclass
class Automaton:
    name: str
    clauses: tuple
    make_init: Callable
    make_fin: Callable
    render_item: Callable
    size_hint: tuple = (1, 1)
    # By default a run accepts exactly on the one-element stack [fin(n)].
    # An automaton whose clause structure cannot reach that shape supplies
    # its own predicate factory instead (the head-inward recognizer never
    # pops its initial item and merges live alternatives into the final
    # item's set, so it accepts on [init, item-containing-fin]).
    make_accepting: Optional[Callable] = None
    collapse_rows: Optional[Callable] = None

    def accepting_predicate(self, n):
        if self.make_accepting is not None:
            return self.make_accepting(n)
        fin = self.make_fin(n)

        def accepting(stack):
            return len(stack) == 1 and stack[0] == fin
        return accepting

    def render_stack(self, stack):
        return " ".join(self.render_item(item) for item in stack)


class TraceStep(NamedTuple):
    label: str
    stack: tuple


@dataclass(frozen=True)
class Trace:
    initial: tuple
    steps: tuple


@dataclass
class RunStats:
    configurations_explored: int = 0
    clause_applications: int = 0
    max_stack_depth: int = 0
    consulted_positions: frozenset = frozenset()
    duplicates_pruned: int = 0
    limit_hit: bool = False
    consulted_sets: Optional[frozenset] = None


@dataclass
class RunResult:
    verdict: Verdict
    stats: RunStats
    accepting_trace: Optional[Trace] = None
    visited: Optional[tuple] = None


def default_max_depth(n, size_hint):
    rules, nonterminals = size_hint
    return 16 * (n + 2) * (rules + nonterminals)


def _successors(clauses, stack, ctx):
    for clause in clauses:
        for matched, replacement, consulted in clause.matcher(stack, ctx):
            yield clause.label, matched, replacement, consulted


def run(automaton: Automaton, tokens, *, max_steps: int = 1_000_000,
        max_depth: Optional[int] = None, exhaustive: bool = False,
        collect_consulted: bool = False, keep_visited: bool = False,
        prune: bool = True) -> RunResult:
    """Search the automaton's configuration space on the given input.

    Returns ACCEPT as soon as an accepting stack is reachable (the whole
    space is still explored when `exhaustive` is set, which makes the
    statistics comparable across algorithms), REJECT when the reachable
    space was exhausted without acceptance, and RESOURCE_LIMIT when a step
    or depth bound cut the search short instead.
    """
    tokens = tuple(tokens)
    n = len(tokens)
    ctx = RunContext(tokens, n)
    if max_depth is None:
        max_depth = default_max_depth(n, automaton.size_hint)
    accepting = automaton.accepting_predicate(n)
    start = (automaton.make_init(n),)

    visited = {start}
    order = [start] if keep_visited else None
    parents = {}
    consulted = {start: frozenset()}
    consulted_sets = {frozenset()} if collect_consulted else None

    explored = 1
    applications = 0
    deepest = 1
    duplicates = 0
    limit_hit = False
    accept_cfg = start if accepting(start) else None

    agenda = [(start, _successors(automaton.clauses, start, ctx))]
    while agenda:
        cfg, successors = agenda[-1]
        step = next(successors, None)
        if step is None:
            agenda.pop()
            continue
        label, matched, replacement, pos = step
        applications += 1
        if applications > max_steps:
            limit_hit = True
            break
        new_cfg = cfg[:len(cfg) - matched] + replacement
        base = consulted[cfg]
        new_consulted = base if pos is None else base | {pos}
        if collect_consulted and new_consulted is not base:
            consulted_sets.add(new_consulted)
        if len(new_cfg) > max_depth:
            limit_hit = True
            continue
        if prune:
            if new_cfg in visited:
                duplicates += 1
                continue
            visited.add(new_cfg)
        explored += 1
        if keep_visited:
            order.append(new_cfg)
        if new_cfg not in parents:
            parents[new_cfg] = (cfg, label)
        consulted[new_cfg] = new_consulted
        if len(new_cfg) > deepest:
            deepest = len(new_cfg)
        if accept_cfg is None and accepting(new_cfg):
            accept_cfg = new_cfg
            if not exhaustive:
                break
        agenda.append((new_cfg, _successors(automaton.clauses, new_cfg, ctx)))

    if accept_cfg is not None:
        verdict = Verdict.ACCEPT
        final_consulted = consulted[accept_cfg]
    else:
        verdict = Verdict.RESOURCE_LIMIT if limit_hit else Verdict.REJECT
        final_consulted = max(consulted.values(), key=lambda s: (len(s), sorted(s)),
                              default=frozenset())
    stats = RunStats(
        configurations_explored=explored,
        clause_applications=applications,
        max_stack_depth=deepest,
        consulted_positions=final_consulted,
        duplicates_pruned=duplicates,
        limit_hit=limit_hit,
        consulted_sets=frozenset(consulted_sets) if collect_consulted else None,
    )
    trace = _build_trace(parents, start, accept_cfg) if accept_cfg is not None else None
    return RunResult(verdict, stats, trace,
                     visited=tuple(order) if keep_visited else None)


def _build_trace(parents, start, end):
    steps = []
    cur = end
    while cur != start:
        prev, label = parents[cur]
        steps.append(TraceStep(label, cur))
        cur = prev
    steps.reverse()
    return Trace(start, tuple(steps))


def accepting_trace(result: RunResult) -> Trace:
    if result.verdict is not Verdict.ACCEPT or result.accepting_trace is None:
        raise EngineError("no accepting trace: verdict was %s" % result.verdict.value)
    return result.accepting_trace


def replay(automaton: Automaton, tokens, trace: Trace, *, check_accept=True) -> bool:
    """Re-derive every trace step from the initial stack.

    True when each recorded (label, stack) pair is producible by one clause
    application from its predecessor and, if requested, the final stack is
    accepting.
    """
    tokens = tuple(tokens)
    ctx = RunContext(tokens, len(tokens))
    if trace.initial != (automaton.make_init(ctx.n),):
        return False
    cur = trace.initial
    for step in trace.steps:
        hit = False
        for label, matched, replacement, _ in _successors(automaton.clauses, cur, ctx):
            if label == step.label and cur[:len(cur) - matched] + replacement == step.stack:
                hit = True
                break
        if not hit:
            return False
        cur = step.stack
    if check_accept:
        return automaton.accepting_predicate(ctx.n)(cur)
    return True


def trace_rows(automaton: Automaton, trace: Trace):
    """(label, stack) display rows; follows the automaton's row-merging
    convention when it has one (the tree recognizer merges the two
    empty-subtree conversions that finish a bare tree into a single row)."""
    if automaton.collapse_rows is not None:
        return list(automaton.collapse_rows(trace.steps))
    return [(s.label, s.stack) for s in trace.steps]


def render_trace_text(automaton: Automaton, trace: Trace) -> str:
    rows = [("", trace.initial)] + [(label, stack) for label, stack in
                                    trace_rows(automaton, trace)]
    rendered = [(automaton.render_stack(stack), label) for label, stack in rows]
    width = max(len(s) for s, _ in rendered)
    width = max(width, len("Stack"))
    lines = ["%-*s | %s" % (width, "Stack", "Clause")]
    lines.extend("%-*s | %s" % (width, s, label) for s, label in rendered)
    return "\n".join(lines) + "\n"


def trace_records(automaton: Automaton, trace: Trace) -> list:
    """Structured trace: one record per display row."""
    out = [{"clause": None,
            "stack": [automaton.render_item(i) for i in trace.initial]}]
    for label, stack in trace_rows(automaton, trace):
        out.append({"clause": label,
                    "stack": [automaton.render_item(i) for i in stack]})
    return out
