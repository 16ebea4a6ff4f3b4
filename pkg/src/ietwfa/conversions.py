"""Automaton and grammar conversions and the normal-form constructions.

Composite states get readable bracketed names such as ``<a.q.b.L>``. Only
states that occur in generated rules (plus start and final states) are kept.
"""
from __future__ import annotations

from .core import Direction, Ietwgfa, Rule, classify
from .grammars import GrammarRule, LinearGrammar, is_even_linear
from .naming import Namer

L, R, N = Direction.LEFT, Direction.RIGHT, Direction.NEUTRAL


class _RuleSet:
    """Insertion-ordered rule collection that reports whether an add was new."""

    def __init__(self):
        self._rules = {}

    def add(self, rule: Rule) -> bool:
        if rule in self._rules:
            return False
        self._rules[rule] = None
        return True

    def __iter__(self):
        return iter(list(self._rules))

    def __len__(self):
        return len(self._rules)


def _machine(rules, alphabet, start, finals, extra_states=()) -> Ietwgfa:
    rules = list(rules)
    states = {start, *finals, *extra_states}
    for r in rules:
        states.update((r.state, r.target))
    return Ietwgfa(states, alphabet, rules, start, finals)


def _read(direction: Direction, state: str, read, target: str) -> Rule:
    return Rule(state, tuple(read), target, direction if read else N)


# -- automaton <-> linear grammar ---------------------------------------------


def gfa_to_lg(m: Ietwgfa) -> LinearGrammar:
    """A linear grammar deriving ``L(m)`` by running ``m``'s moves backwards."""
    namer = Namer(m.states | m.alphabet)
    start = namer.fresh("S")
    rules = [GrammarRule.terminal(m.start)]
    rules += [GrammarRule(start, (), f) for f in sorted(m.finals)]
    for r in m.rules:
        if r.direction is L:
            rules.append(GrammarRule(r.target, r.read, r.state, ()))
        else:
            rules.append(GrammarRule(r.target, (), r.state, r.read))
    return LinearGrammar(m.states | {start}, m.alphabet, rules, start)


def _rule_state_name(rule: GrammarRule) -> str:
    parts = ["".join(rule.x), rule.mid, "".join(rule.y)]
    return f"<{rule.lhs}->" + ".".join(p for p in parts if p) + ">"


def lg_to_gfa(g: LinearGrammar) -> Ietwgfa:
    """An automaton accepting ``L(g)`` by undoing derivation steps.

    ``A -> x`` becomes ``s x -> A``; ``A -> x B y`` becomes the left rule
    ``x B -> <A->x.B.y>`` followed by the right rule ``<A->x.B.y> y -> A``.
    """
    namer = Namer(g.nonterminals | g.terminals)
    start = namer.fresh("s")
    rules = []
    for gr in g.rules:
        if gr.mid is None:
            rules.append(_read(R, start, gr.x, gr.lhs))
            continue
        middle = namer.name(("rule", gr), _rule_state_name(gr))
        rules.append(_read(L, gr.mid, gr.x, middle))
        rules.append(_read(R, middle, gr.y, gr.lhs))
    return _machine(rules, g.terminals, start, {g.start}, g.nonterminals)


def elg_to_gfa_init_even(g: LinearGrammar) -> Ietwgfa:
    """``lg_to_gfa`` restricted to even grammars, whose output also works under init-even."""
    witness = is_even_linear(g)
    if not witness.even:
        raise ValueError(f"grammar is not even linear: {witness.offending_rule}")
    return lg_to_gfa(g)


# -- general -> simple -> ε-free -----------------------------------------------


def gfa_to_sfa(m: Ietwgfa) -> Ietwgfa:
    """Split every multi-symbol move into single-symbol moves.

    The intermediate state remembers the source state, what is still to be
    read, the eventual target and the direction, e.g. ``<s:a:q:L>``. Left
    moves read the symbol next to the head first.
    """
    if classify(m).simple:
        return m
    namer = Namer(m.states | m.alphabet)
    rules = []
    for r in m.rules:
        if len(r.read) <= 1:
            rules.append(r)
            continue
        order = list(reversed(r.read)) if r.direction is L else list(r.read)
        current = r.state
        for i, sym in enumerate(order):
            if i == len(order) - 1:
                nxt = r.target
            else:
                rest = order[i + 1:]
                pending = tuple(reversed(rest)) if r.direction is L else tuple(rest)
                key = ("chain", r.state, pending, r.target, r.direction)
                nxt = namer.name(key, f"<{r.state}:{''.join(pending)}:{r.target}:{r.direction.value}>")
            rules.append(Rule(current, (sym,), nxt, r.direction))
            current = nxt
    return _machine(rules, m.alphabet, m.start, m.finals, m.states)


def epsilon_closure(m: Ietwgfa) -> dict:
    """For every state, the states reachable through ε-rules alone (itself included)."""
    step = {}
    for r in m.rules:
        if r.is_epsilon:
            step.setdefault(r.state, set()).add(r.target)
    closure = {}
    for q in m.states:
        seen = {q}
        stack = [q]
        while stack:
            for nxt in step.get(stack.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        closure[q] = seen
    return closure


def remove_epsilon(m: Ietwgfa, require_simple: bool = False) -> Ietwgfa:
    """An ε-free equivalent: every reading rule is copied to each state whose ε-closure reaches it.

    Rules whose source can no longer be reached from the start are dropped.
    """
    if require_simple and not classify(m).simple:
        raise ValueError("automaton is not simple")
    if classify(m).epsilon_free:
        return m
    closure = epsilon_closure(m)
    reading = [r for r in m.rules if not r.is_epsilon]
    rules = _RuleSet()
    for q in sorted(m.states):
        for r in reading:
            if r.state in closure[q]:
                rules.add(Rule(q, r.read, r.target, r.direction))
    finals = {q for q in m.states if closure[q] & m.finals}
    reachable = {m.start}
    grew = True
    while grew:
        grew = False
        for r in rules:
            if r.state in reachable and r.target not in reachable:
                reachable.add(r.target)
                grew = True
    kept = [r for r in rules if r.state in reachable]
    return Ietwgfa(m.states, m.alphabet, kept, m.start, finals)


# -- even computations ---------------------------------------------------------


class _EvenBuild:
    """State of the even-computation construction, shared with the init-even one."""

    def __init__(self, m: Ietwgfa):
        self.m = m
        self.namer = Namer(m.states | m.alphabet)
        self.start = self.namer.fresh(m.start + "'")
        self.rules = _RuleSet()
        self.finals = set()

    def state(self, left, q, right, d: Direction) -> str:
        """``<x.q.y.L>``: still to read ``left`` leftwards and ``right`` rightwards, then be in ``q``."""
        return self.namer.composite(tuple(left), q, tuple(right), d.value)

    def bare(self, q, d: Direction) -> str:
        return self.state((), q, (), d)

    def unfold(self, left, q, right, d: Direction) -> None:
        """Rules that read ``left``/``right`` one symbol at a time, alternating sides."""
        left, right = tuple(left), tuple(right)
        while left or right:
            here = self.state(left, q, right, d)
            read_left = (len(left) == len(right)) == (d is L)
            if read_left:
                sym, left = left[-1], left[:-1]
                self.rules.add(Rule(here, (sym,), self.state(left, q, right, d), L))
            else:
                sym, right = right[0], right[1:]
                self.rules.add(Rule(here, (sym,), self.state(left, q, right, d), R))

    def _open(self, p: str, sym: str, target: str, d: Direction) -> None:
        self.rules.add(Rule(self.bare(p, d), (sym,), target, d))
        if p == self.m.start:
            self.rules.add(Rule(self.start, (sym,), target, d))

    def build(self) -> None:
        m = self.m
        for first in m.rules:
            if first.is_epsilon:
                continue
            n = len(first.read)
            for second in m.rules:
                if second.state != first.target or len(second.read) != n or second.direction is not first.direction.opposite():
                    continue
                p, o = first.state, second.target
                if first.direction is L:
                    # x p -> q then q y -> o
                    x, y = first.read, second.read
                    nxt = self.state(x[:-1], o, y, L)
                    self._open(p, x[-1], nxt, L)
                    self.unfold(x[:-1], o, y, L)
                else:
                    # p y -> q then x q -> o
                    y, x = first.read, second.read
                    nxt = self.state(x, o, y[1:], R)
                    self._open(p, y[0], nxt, R)
                    self.unfold(x, o, y[1:], R)
        eps_pairs = [(a.state, b.target) for a in m.rules if a.is_epsilon
                     for b in m.rules if b.is_epsilon and b.state == a.target]
        eps_pairs = sorted(set(eps_pairs))
        grew = True
        while grew:
            grew = False
            for p, o in eps_pairs:
                for d in (L, R):
                    src = self.bare(o, d)
                    for r in self.rules:
                        if r.state == src and r.direction is d:
                            before = len(self.rules)
                            self._open(p, r.read[0], r.target, d)
                            grew |= len(self.rules) != before
        self.finals = {self.bare(f, d) for f in m.finals for d in (L, R)}
        if m.start in m.finals:
            self.finals.add(self.start)
        grew = True
        while grew:
            grew = False
            for p, o in eps_pairs:
                if self.bare(o, L) in self.finals and self.bare(p, L) not in self.finals:
                    self.finals |= {self.bare(p, L), self.bare(p, R)}
                    if p == m.start:
                        self.finals.add(self.start)
                    grew = True


def even_to_efree_sfa(m: Ietwgfa) -> Ietwgfa:
    """An ε-free simple automaton whose language, in any mode, is ``L(m)`` under even computations.

    Each pair of equally long opposite moves of ``m`` becomes a run of
    single-symbol moves alternating sides; ``<q.L>`` and ``<q.R>`` mark that
    the next pair starts with a left or a right move. Pairs of ε-moves are
    bypassed by copying the opening rules of their end state.
    """
    b = _EvenBuild(m)
    b.build()
    return _machine(b.rules, m.alphabet, b.start, b.finals)


def lift_even_to_init_even(m: Ietwgfa) -> Ietwgfa:
    """Prefix a fresh start state with an ε-move, turning even runs into init-even runs."""
    namer = Namer(m.states | m.alphabet)
    start = namer.fresh(m.start + "'")
    return Ietwgfa(m.states | {start}, m.alphabet, (Rule.epsilon(start, m.start),) + m.rules,
                   start, m.finals)


def init_even_to_sfa(m: Ietwgfa) -> Ietwgfa:
    """A simple automaton for ``L(m)`` under init-even computations.

    The opening move of ``m`` is replayed from the new start state: one that
    reads at most one symbol directly, a longer one by starting in its middle
    and reading outwards one symbol at a time. After that the machine continues
    as the even construction does. No rule enters the start state and only the
    start state has ε-rules.
    """
    b = _EvenBuild(m)
    b.build()
    start = b.start
    rules = _RuleSet()
    for r in b.rules:
        if r.state != start:
            rules.add(r)
    finals = b.finals - {start}

    def middle(left, q, right) -> str:
        return b.namer.composite(tuple(left), q, tuple(right))

    def target(left, q, right, last: Direction) -> str:
        if left or right:
            return middle(left, q, right)
        return b.bare(q, L if last is R else R)

    pending = []
    for r in m.rules:
        if r.state != m.start:
            continue
        z, q = r.read, r.target
        if len(z) <= 1:
            for d in (L, R):
                rules.add(_read(R, start, z, b.bare(q, d)))
            continue
        n = len(z) // 2
        if len(z) % 2 == 0:
            left, right = z[:n], z[n:]
            rules.add(Rule.epsilon(start, middle(left, q, right)))
        else:
            left, right = z[:n], z[n + 1:]
            rules.add(Rule(start, (z[n],), middle(left, q, right), R))
        pending.append((left, q, right))
    seen = set()
    while pending:
        left, q, right = pending.pop()
        if (left, q, right) in seen or not (left or right):
            continue
        seen.add((left, q, right))
        here = middle(left, q, right)
        if len(left) >= len(right):
            nl = left[:-1]
            rules.add(Rule(here, (left[-1],), target(nl, q, right, L), L))
            pending.append((nl, q, right))
        if len(left) <= len(right):
            nr = right[1:]
            rules.add(Rule(here, (right[0],), target(left, q, nr, R), R))
            pending.append((left, q, nr))
    return _machine(rules, m.alphabet, start, finals)


def init_even_to_elg(m: Ietwgfa) -> LinearGrammar:
    """An even linear grammar generating ``L(m)`` under init-even computations."""
    namer = Namer(m.states | m.alphabet)
    nts = {(q, d): namer.composite(q, d.value) for q in sorted(m.states) for d in (L, R)}
    start = namer.fresh("S")
    rules = []
    for f in sorted(m.finals):
        rules += [GrammarRule(start, (), nts[f, L]), GrammarRule(start, (), nts[f, R])]
    for r in m.rules:
        if r.state == m.start:
            rules += [GrammarRule.terminal(nts[r.target, L], r.read),
                      GrammarRule.terminal(nts[r.target, R], r.read)]
    for first in m.rules:
        for second in m.rules:
            if second.state != first.target or len(first.read) != len(second.read):
                continue
            q, o = first.state, second.target
            if first.direction in (L, N) and second.direction in (R, N):
                rules.append(GrammarRule(nts[o, L], first.read, nts[q, L], second.read))
            if first.direction in (R, N) and second.direction in (L, N):
                rules.append(GrammarRule(nts[o, R], second.read, nts[q, R], first.read))
    used = {start}
    for gr in rules:
        used.add(gr.lhs)
        if gr.mid is not None:
            used.add(gr.mid)
    return LinearGrammar(used, m.alphabet, rules, start)
