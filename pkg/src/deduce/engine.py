"""Agenda-driven deduction: one procedure for every rule system.

The engine seeds the store with axioms, then repeatedly pops an item,
fires every clause whose trigger matches it against the chart built so
far, and enqueues the consequents.  Duplicates collapse in the store;
the goal check runs after the loop whether or not the step limit was
hit, so a halted parse still reports any goals already derived.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .grammar import InputString
from .store import History, INITIAL, ItemStore
from .systems import (
    DeductionSystem,
    EvalContext,
    ItemPremise,
    REGISTRY,
    SideCondition,
    SideConditionError,
    UnknownBuiltinError,
    item_renderer,
)
from .terms import (
    Term,
    VarSource,
    canonical,
    rename_with,
    subsumes,
    unify,
)


class EngineError(Exception):
    pass


TRACE_MODES = ("off", "items", "rules")


@dataclass(frozen=True)
class ParseOptions:
    step_limit: int = 100_000
    trace: str = "off"
    history_limit: int = 64

    def __post_init__(self):
        if self.trace not in TRACE_MODES:
            raise ValueError(f"trace must be one of {TRACE_MODES}")
        if self.step_limit < 0:
            raise ValueError("step_limit must be non-negative")


@dataclass
class ParseResult:
    system: DeductionSystem
    grammar: object
    input: InputString
    store: ItemStore
    accepted: bool
    goal_indices: list
    pops: int
    enqueues: int
    duplicates: int
    halted_by_limit: bool

    def dump(self) -> str:
        return self.store.dump(render=item_renderer(self.system.name))


def consequences(system, store, index, grammar, input_string, source):
    """Every firing triggered by the item at ``index``.

    Yields (clause, consequent, antecedent indices).  Premises run
    strictly left to right; chart lookups see all indices below the
    agenda head, which includes the trigger itself, so a rule may pair
    the trigger with its own chart entry.
    """
    trigger_item = store.renamed(index, source)
    ctx = EvalContext(grammar, input_string, source)
    for clause in system.clauses:
        trig, premises, consequent, _own = clause.instantiate(source)
        s0 = unify(trig, trigger_item)
        if s0 is None:
            continue
        partials = [(s0, {clause.trigger_slot: index})]
        for p in premises:
            nexts = []
            for s, antes in partials:
                if isinstance(p, SideCondition):
                    fn = REGISTRY.get(p.builtin)
                    if fn is None:
                        raise UnknownBuiltinError(p.builtin)
                    args = tuple(s.apply(a) for a in p.args)
                    for s2 in fn(args, ctx):
                        nexts.append((s.compose(s2), antes))
                else:
                    pattern = s.apply(p.pattern)
                    for midx, mgu in store.chart_matches(pattern, source=source):
                        nexts.append((s.compose(mgu), {**antes, p.slot: midx}))
            partials = nexts
            if not partials:
                break
        for s, antes in partials:
            out = s.apply(consequent)
            if clause.transform is not None:
                out = clause.transform(out, source)
            yield clause, out, tuple(antes[k] for k in range(clause.n_antecedents))


def parse(
    system: DeductionSystem,
    grammar,
    input_string: InputString,
    options: "ParseOptions | None" = None,
    trace_out=None,
) -> ParseResult:
    opts = options or ParseOptions()
    if not isinstance(grammar, system.grammar_class):
        raise EngineError(
            f"system {system.name} expects a {system.grammar_class.__name__}, "
            f"got {type(grammar).__name__}"
        )
    if system.check_grammar is not None:
        system.check_grammar(grammar)

    render = item_renderer(system.name)
    out = trace_out
    if opts.trace != "off" and out is None:
        out = sys.stderr
    tracing = opts.trace != "off"
    rule_tracing = opts.trace == "rules"

    store = ItemStore(key_of=system.key_of, history_limit=opts.history_limit)
    source = VarSource()
    pops = enqueues = duplicates = 0

    for axiom in system.axioms(grammar, input_string):
        idx, added = store.enqueue(axiom, History(INITIAL, ()), stage=0)
        if added:
            enqueues += 1
            if rule_tracing:
                print(f"FIRE {idx} {render(axiom)} {INITIAL}()", file=out)
        else:
            duplicates += 1

    while True:
        if pops >= opts.step_limit:
            break
        index = store.pop()
        if index is None:
            break
        pops += 1
        if tracing:
            print(f"POP {index} {render(store.get(index).item)}", file=out)
        for clause, consequent, antecedents in consequences(
            system, store, index, grammar, input_string, source
        ):
            history = History(clause.rule_name, antecedents)
            new_index, added = store.enqueue(consequent, history, stage=pops)
            if added:
                enqueues += 1
                if rule_tracing:
                    print(f"FIRE {new_index} {render(consequent)} {history.render()}", file=out)
            else:
                duplicates += 1
                if rule_tracing:
                    print(f"DUP {new_index} {render(consequent)} {history.render()}", file=out)

    halted = store.agenda_size > 0
    goal_indices = store.goal_items(system.goal_patterns(grammar, input_string), source=source)
    if tracing:
        for gi in goal_indices:
            print(f"GOAL {gi} {render(store.get(gi).item)}", file=out)

    return ParseResult(
        system=system,
        grammar=grammar,
        input=input_string,
        store=store,
        accepted=bool(goal_indices),
        goal_indices=goal_indices,
        pops=pops,
        enqueues=enqueues,
        duplicates=duplicates,
        halted_by_limit=halted,
    )


def naive_closure(system, grammar, input_string, bound: int = 20_000):
    """Deductive closure by blind fixpoint iteration.

    No agenda, no indexing, no subsumption: items are deduplicated only
    up to variable renaming.  Each round re-fires every trigger-first
    clause against everything known.  The result is the set of
    canonical forms; ``bound`` caps the item count since recursive rule
    sets need not terminate.
    """
    seen: set = set()
    known: list = []

    def add(t: Term) -> bool:
        c = canonical(t)
        if c in seen:
            return False
        seen.add(c)
        known.append(t)
        return True

    for axiom in system.axioms(grammar, input_string):
        add(axiom)
    source = VarSource(30_000_000)
    ctx = EvalContext(grammar, input_string, source)
    first_clauses = [c for c in system.clauses if c.trigger_slot == 0]

    changed = True
    while changed:
        changed = False
        for clause in first_clauses:
            for trigger_item in list(known):
                trig, premises, consequent, _own = clause.instantiate(source)
                item = trigger_item if trigger_item.ground else rename_with(trigger_item, {}, source)
                s0 = unify(trig, item)
                if s0 is None:
                    continue
                partials = [s0]
                for p in premises:
                    nexts = []
                    for s in partials:
                        if isinstance(p, SideCondition):
                            fn = REGISTRY.get(p.builtin)
                            if fn is None:
                                raise UnknownBuiltinError(p.builtin)
                            args = tuple(s.apply(a) for a in p.args)
                            for s2 in fn(args, ctx):
                                nexts.append(s.compose(s2))
                        else:
                            pat = s.apply(p.pattern)
                            for other in list(known):
                                o = other if other.ground else rename_with(other, {}, source)
                                s2 = unify(pat, o, init=s)
                                if s2 is not None:
                                    nexts.append(s2)
                    partials = nexts
                    if not partials:
                        break
                for s in partials:
                    item_out = s.apply(consequent)
                    if clause.transform is not None:
                        item_out = clause.transform(item_out, source)
                    if add(item_out):
                        changed = True
                        if len(seen) > bound:
                            raise EngineError(f"naive closure exceeded {bound} items")
    return seen


def check_soundness(result: ParseResult) -> list:
    """Replay every recorded justification; the list of failures.

    A justification passes when some consequent derivable from its
    recorded antecedents (or, for an axiom entry, some actual axiom) is
    covered by the stored item.  Subsumption collapse makes this the
    right direction: extra histories on a general item justify
    instances of it.
    """
    system, g, w, store = result.system, result.grammar, result.input, result.store
    axioms = system.axioms(g, w)
    source = VarSource(40_000_000)
    violations = []
    for stored in store.items():
        for hist in stored.histories:
            if not _replay_ok(system, store, stored, hist, axioms, g, w, source):
                violations.append(
                    f"item {stored.index} has an unreplayable justification {hist.render()}"
                )
    return violations


def _replay_ok(system, store, stored, hist, axioms, g, w, source):
    item = stored.item if stored.item.ground else rename_with(stored.item, {}, source)
    if hist.rule_name == INITIAL:
        if hist.antecedents:
            return False
        for ax in axioms:
            a = ax if ax.ground else rename_with(ax, {}, source)
            if subsumes(item, a):
                return True
        return False
    clauses = [c for c in system.rule_clauses(hist.rule_name) if c.trigger_slot == 0]
    if not clauses:
        return False
    clause = clauses[0]
    if clause.n_antecedents != len(hist.antecedents):
        return False
    if any(not 1 <= i <= len(store) for i in hist.antecedents):
        return False
    antes = [store.renamed(i, source) for i in hist.antecedents]
    trig, premises, consequent, _own = clause.instantiate(source)
    s0 = unify(trig, antes[0])
    if s0 is None:
        return False
    ctx = EvalContext(g, w, source)
    partials = [s0]
    for p in premises:
        nexts = []
        for s in partials:
            if isinstance(p, SideCondition):
                fn = REGISTRY.get(p.builtin)
                if fn is None:
                    return False
                args = tuple(s.apply(a) for a in p.args)
                try:
                    for s2 in fn(args, ctx):
                        nexts.append(s.compose(s2))
                except SideConditionError:
                    continue
            else:
                s2 = unify(s.apply(p.pattern), antes[p.slot], init=s)
                if s2 is not None:
                    nexts.append(s2)
        partials = nexts
        if not partials:
            return False
    for s in partials:
        out = s.apply(consequent)
        if clause.transform is not None:
            out = clause.transform(out, source)
        if subsumes(item, out):
            return True
    return False
