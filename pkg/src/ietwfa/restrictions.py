"""Product constructions that confine parts of the input to regular or finite languages.

Every operation takes an ε-free simple automaton ``m`` and builds only the
product states reachable from the new start state.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable

from .core import Direction, Ietwgfa, Nfa, Rule, Transition, as_word, classify, validate_automaton
from .naming import Namer

L, R = Direction.LEFT, Direction.RIGHT


def _check_machine(m: Ietwgfa) -> None:
    c = classify(m)
    if not c.simple:
        raise ValueError("automaton must be simple")
    if not c.epsilon_free:
        raise ValueError("automaton must be epsilon-free")


def _check_restrictor(n: Nfa, m: Ietwgfa, what: str) -> None:
    problems = validate_automaton(n)
    if problems:
        raise ValueError(f"{what} restrictor is invalid: {problems[0]}")
    if not n.epsilon_free:
        raise ValueError(f"{what} restrictor must be epsilon-free")
    if not n.alphabet <= m.alphabet:
        raise ValueError(f"{what} restrictor uses symbols outside the automaton's alphabet")


def _forward(n: Nfa) -> dict:
    """``(source, symbol) -> sorted targets``."""
    out = {}
    for t in n.rules:
        out.setdefault((t.source, t.symbol), set()).add(t.target)
    return {k: sorted(v) for k, v in out.items()}


def _backward(n: Nfa) -> dict:
    """``(target, symbol) -> sorted sources``; reading ``n`` in reverse without building it."""
    out = {}
    for t in n.rules:
        out.setdefault((t.target, t.symbol), set()).add(t.source)
    return {k: sorted(v) for k, v in out.items()}


def _moves(m: Ietwgfa, direction: Direction) -> dict:
    out = {}
    for r in m.rules:
        if r.direction is direction:
            out.setdefault(r.state, []).append((r.read[0], r.target))
    return out


class _Explorer:
    """Worklist over product tuples that names states and records rules."""

    def __init__(self, m: Ietwgfa, *others):
        reserved = set(m.states) | set(m.alphabet)
        for other in others:
            reserved |= set(other.states)
        self.namer = Namer(reserved)
        self.start = self.namer.fresh(m.start + "'")
        self.queue = deque()
        self.seen = set()
        self.rules = []

    def name(self, key: tuple) -> str:
        return self.namer.composite(*key)

    def visit(self, key: tuple) -> str:
        if key not in self.seen:
            self.seen.add(key)
            self.queue.append(key)
        return self.name(key)


def restrict_sides(m: Ietwgfa, a: Nfa, b: Nfa) -> Ietwgfa:
    """Accept ``uv`` when ``m`` erases it from the split ``u|v`` with ``u`` in ``L(a)`` and ``v`` in ``L(b)``.

    The left part is checked by running ``a`` backwards from one of its final
    states to its start, the right part by running ``b`` forwards. The start
    moves are ε-rules, so the output is simple but not ε-free.
    """
    _check_machine(m)
    _check_restrictor(a, m, "left")
    _check_restrictor(b, m, "right")
    ex = _Explorer(m, a, b)
    back_a, fwd_b = _backward(a), _forward(b)
    left, right = _moves(m, L), _moves(m, R)
    for f1 in sorted(a.finals):
        ex.rules.append(Rule.epsilon(ex.start, ex.visit((m.start, f1, b.start))))
    while ex.queue:
        key = ex.queue.popleft()
        p, p1, p2 = key
        here = ex.name(key)
        for sym, q in left.get(p, ()):
            for q1 in back_a.get((p1, sym), ()):
                ex.rules.append(Rule(here, (sym,), ex.visit((q, q1, p2)), L))
        for sym, q in right.get(p, ()):
            for q2 in fwd_b.get((p2, sym), ()):
                ex.rules.append(Rule(here, (sym,), ex.visit((q, p1, q2)), R))
    finals = {ex.name(k) for k in ex.seen if k[0] in m.finals and k[1] == a.start and k[2] in b.finals}
    return _product_machine(ex, m, finals)


def restrict_whole(m: Ietwgfa, a: Nfa) -> Ietwgfa:
    """Accept the words of ``L(m)`` that also lie in ``L(a)``.

    The start guesses the state ``a`` is in at the split; left moves walk
    ``a`` back from it to its start, right moves forward to a final state.
    """
    _check_machine(m)
    _check_restrictor(a, m, "word")
    ex = _Explorer(m, a)
    back, fwd = _backward(a), _forward(a)
    left, right = _moves(m, L), _moves(m, R)
    for guess in sorted(a.states):
        ex.rules.append(Rule.epsilon(ex.start, ex.visit((m.start, guess, guess))))
    while ex.queue:
        key = ex.queue.popleft()
        p, lo, hi = key
        here = ex.name(key)
        for sym, q in left.get(p, ()):
            for nlo in back.get((lo, sym), ()):
                ex.rules.append(Rule(here, (sym,), ex.visit((q, nlo, hi)), L))
        for sym, q in right.get(p, ()):
            for nhi in fwd.get((hi, sym), ()):
                ex.rules.append(Rule(here, (sym,), ex.visit((q, lo, nhi)), R))
    finals = {ex.name(k) for k in ex.seen if k[0] in m.finals and k[1] == a.start and k[2] in a.finals}
    return _product_machine(ex, m, finals)


def _product_machine(ex: _Explorer, m: Ietwgfa, finals) -> Ietwgfa:
    states = {ex.start} | {ex.name(k) for k in ex.seen}
    return Ietwgfa(states, m.alphabet, ex.rules, ex.start, finals)


def restrict_finite_prefix(m: Ietwgfa, prefixes: Iterable, b: Nfa) -> Nfa:
    """A one-way NFA for ``{uv : m erases uv from the split u|v, u in prefixes, v in L(b)}``.

    The NFA first reads and remembers ``u`` (only prefixes of the given words
    are ever stored), then replays ``m``: left moves consume the remembered
    string through ε-transitions and right moves read the input together
    with ``b``.
    """
    _check_machine(m)
    _check_restrictor(b, m, "right")
    words = {as_word(w) for w in prefixes}
    for w in words:
        for sym in w:
            if sym not in m.alphabet:
                raise ValueError(f"prefix word uses symbol {sym!r} outside the alphabet")
    stems = {w[:i] for w in words for i in range(len(w) + 1)}
    namer = Namer(set(m.states) | set(m.alphabet) | set(b.states))

    def stem(x):
        return namer.name(("stem", x), "<" + "".join(x) + ">")

    def sim(x, q, qb):
        return namer.composite(x, q, qb)

    fwd_b = _forward(b)
    right = _moves(m, R)
    left = _moves(m, L)
    rules = []
    for x in sorted(stems, key=lambda w: (len(w), w)):
        for sym in sorted(m.alphabet):
            if x + (sym,) in stems:
                rules.append(Transition(stem(x), sym, stem(x + (sym,))))
    queue = deque()
    seen = set()

    def visit(key):
        if key not in seen:
            seen.add(key)
            queue.append(key)
        return sim(*key)

    for x in sorted(words, key=lambda w: (len(w), w)):
        rules.append(Transition(stem(x), None, visit((x, m.start, b.start))))
    while queue:
        x, p, pb = key = queue.popleft()
        here = sim(*key)
        for sym, q in left.get(p, ()):
            if x and x[-1] == sym:
                rules.append(Transition(here, None, visit((x[:-1], q, pb))))
        for sym, q in right.get(p, ()):
            for qb in fwd_b.get((pb, sym), ()):
                rules.append(Transition(here, sym, visit((x, q, qb))))
    states = {stem(x) for x in stems} | {sim(*k) for k in seen} | {stem(())}
    finals = {sim(*k) for k in seen if not k[0] and k[1] in m.finals and k[2] in b.finals}
    return Nfa(states, m.alphabet, rules, stem(()), finals)


def restrict_middle(m: Ietwgfa, a: Nfa, b: Nfa, c: Nfa) -> Nfa:
    """A one-way NFA for ``{v : m erases uvw from the split u|vw, u in L(a), v in L(b), w in L(c)}``.

    Phase 1 reads ``v`` with ``m``'s right moves and ``b``; ``m``'s left moves
    guess symbols of ``u`` via ε-transitions checked backwards against ``a``.
    Once ``b`` is final the NFA may switch to phase 2, where right moves guess
    ``w`` against ``c``. Everything in phase 2 is an ε-transition.
    """
    _check_machine(m)
    _check_restrictor(a, m, "left")
    _check_restrictor(b, m, "middle")
    _check_restrictor(c, m, "right")
    namer = Namer(set(m.states) | set(m.alphabet) | set(a.states) | set(b.states) | set(c.states))
    start = namer.fresh(m.start + "'")
    back_a, fwd_b, fwd_c = _backward(a), _forward(b), _forward(c)
    left, right = _moves(m, L), _moves(m, R)
    queue = deque()
    seen = set()

    def name(key):
        return namer.composite(*key)

    def visit(key):
        if key not in seen:
            seen.add(key)
            queue.append(key)
        return name(key)

    rules = [Transition(start, None, visit((m.start, f1, b.start, c.start, "1")))
             for f1 in sorted(a.finals)]
    while queue:
        key = queue.popleft()
        p, p1, p2, p3, phase = key
        here = name(key)
        for sym, q in left.get(p, ()):
            for q1 in back_a.get((p1, sym), ()):
                rules.append(Transition(here, None, visit((q, q1, p2, p3, phase))))
        if phase == "1":
            if p2 in b.finals:
                rules.append(Transition(here, None, visit((p, p1, p2, p3, "2"))))
            for sym, q in right.get(p, ()):
                for q2 in fwd_b.get((p2, sym), ()):
                    rules.append(Transition(here, sym, visit((q, p1, q2, p3, "1"))))
        else:
            for sym, q in right.get(p, ()):
                for q3 in fwd_c.get((p3, sym), ()):
                    rules.append(Transition(here, None, visit((q, p1, p2, q3, "2"))))
    finals = {name(k) for k in seen
              if k[4] == "2" and k[0] in m.finals and k[1] == a.start and k[3] in c.finals}
    states = {start} | {name(k) for k in seen}
    return Nfa(states, m.alphabet, rules, start, finals)
