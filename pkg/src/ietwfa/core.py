"""Value types for input-erasing two-way automata and classical NFAs.

Everything here is immutable once built. Words are tuples of symbol names;
most public functions also accept a plain ``str`` and split it into
single-character symbols.
"""
from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, NamedTuple, Optional, Sequence, Union

Word = tuple  # tuple[str, ...]

_TOKEN = re.compile(r"^\S+$")
RESERVED_TOKENS = frozenset({"->", "_"})


def as_word(w: Union[str, Sequence[str]]) -> Word:
    """Normalize a word: a str is read as single-character symbols, "_" is ε."""
    if isinstance(w, str):
        return () if w == "_" else tuple(w)
    return tuple(w)


def shortlex(words: Iterable[Word]) -> list:
    return sorted(words, key=lambda w: (len(w), w))


class Direction(enum.Enum):
    LEFT = "L"
    RIGHT = "R"
    NEUTRAL = "N"

    def opposite(self) -> "Direction":
        if self is Direction.LEFT:
            return Direction.RIGHT
        if self is Direction.RIGHT:
            return Direction.LEFT
        return self


@dataclass(frozen=True)
class Rule:
    """A rule ``x q -> p`` (left), ``q x -> p`` (right) or ``q -> p`` (ε).

    ε-rules always carry ``Direction.NEUTRAL`` so the left and right
    readings of an empty pattern are one and the same value.
    """

    state: str
    read: Word
    target: str
    direction: Direction = Direction.NEUTRAL

    def __post_init__(self):
        read = tuple(self.read)
        object.__setattr__(self, "read", read)
        if not read:
            object.__setattr__(self, "direction", Direction.NEUTRAL)
        elif self.direction is Direction.NEUTRAL:
            raise ValueError("a rule that reads symbols must be LEFT or RIGHT")

    @classmethod
    def left(cls, read: Union[str, Sequence[str]], state: str, target: str) -> "Rule":
        return cls(state, as_word(read), target, Direction.LEFT)

    @classmethod
    def right(cls, state: str, read: Union[str, Sequence[str]], target: str) -> "Rule":
        return cls(state, as_word(read), target, Direction.RIGHT)

    @classmethod
    def epsilon(cls, state: str, target: str) -> "Rule":
        return cls(state, (), target, Direction.NEUTRAL)

    @property
    def is_epsilon(self) -> bool:
        return not self.read

    @property
    def lhs(self) -> tuple:
        if self.direction is Direction.LEFT:
            return self.read + (self.state,)
        return (self.state,) + self.read

    @property
    def rhs(self) -> str:
        return self.target

    def __str__(self):
        return " ".join(self.lhs) + " -> " + self.target


def rule_direction(rule: Rule) -> Direction:
    return rule.direction


@dataclass(frozen=True)
class Ietwgfa:
    """An input-erasing two-way general finite automaton ``(Q, Σ, R, s, F)``."""

    states: frozenset
    alphabet: frozenset
    rules: tuple
    start: str
    finals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        # duplicates collapse; first occurrence fixes the order
        object.__setattr__(self, "rules", tuple(dict.fromkeys(self.rules)))

    def rules_from(self, state: str) -> list:
        return [(i, r) for i, r in enumerate(self.rules) if r.state == state]

    def __str__(self):
        from .textformat import serialize
        return serialize(self)


class Transition(NamedTuple):
    source: str
    symbol: Optional[str]  # None is ε
    target: str


@dataclass(frozen=True)
class Nfa:
    """A one-way finite automaton with optional ε-transitions."""

    states: frozenset
    alphabet: frozenset
    rules: tuple
    start: str
    finals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        rules = (Transition(*t) for t in self.rules)
        object.__setattr__(self, "rules", tuple(dict.fromkeys(rules)))

    @property
    def epsilon_free(self) -> bool:
        return all(t.symbol is not None for t in self.rules)

    def __str__(self):
        from .textformat import serialize
        return serialize(self)


@dataclass(frozen=True)
class Classification:
    simple: bool
    epsilon_free: bool
    max_lhs_len: int


def classify(m: Ietwgfa) -> Classification:
    lengths = [len(r.lhs) for r in m.rules]
    return Classification(
        simple=all(n <= 2 for n in lengths),
        epsilon_free=all(n != 1 for n in lengths),
        max_lhs_len=max(lengths, default=0),
    )


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    message: str = field(default="", compare=False)

    def __str__(self):
        return f"{self.kind}: {self.subject}" + (f" ({self.message})" if self.message else "")


def check_token(name, what: str) -> list:
    if not isinstance(name, str) or not _TOKEN.match(name) or name in RESERVED_TOKENS:
        return [Violation("token", str(name), f"{what} must be a non-empty token without whitespace")]
    return []


def _check_sets(states, alphabet, start, finals) -> list:
    out = []
    if not states:
        out.append(Violation("empty-states", "states", "state set is empty"))
    if not alphabet:
        out.append(Violation("empty-alphabet", "alphabet", "input alphabet is empty"))
    for q in sorted(states & alphabet):
        out.append(Violation("disjointness", q, "name is both a state and a symbol"))
    for q in sorted(states):
        out += check_token(q, "state")
    for a in sorted(alphabet):
        out += check_token(a, "symbol")
    if start not in states:
        out.append(Violation("start", str(start), "start state is not declared"))
    for f in sorted(finals - states):
        out.append(Violation("final", f, "final state is not declared"))
    return out


def validate_automaton(m: Union[Ietwgfa, Nfa]) -> list:
    """Return the list of definitional violations; an empty list means valid."""
    out = _check_sets(m.states, m.alphabet, m.start, m.finals)
    for rule in m.rules:
        if isinstance(m, Nfa):
            refs, syms = (rule.source, rule.target), () if rule.symbol is None else (rule.symbol,)
        else:
            refs, syms = (rule.state, rule.target), rule.read
        for q in refs:
            if q not in m.states:
                out.append(Violation("rule-state", q, f"undeclared state in rule {_show(rule)}"))
        for a in syms:
            if a not in m.alphabet:
                out.append(Violation("rule-symbol", a, f"undeclared symbol in rule {_show(rule)}"))
    return out


def _show(rule) -> str:
    if isinstance(rule, Transition):
        mid = "" if rule.symbol is None else f" {rule.symbol}"
        return f"{rule.source}{mid} -> {rule.target}"
    return str(rule)


# -- classical NFA semantics -------------------------------------------------

def epsilon_closure(n: Nfa, states: Iterable[str]) -> frozenset:
    eps = {}
    for t in n.rules:
        if t.symbol is None:
            eps.setdefault(t.source, []).append(t.target)
    seen = set(states)
    stack = list(seen)
    while stack:
        for nxt in eps.get(stack.pop(), ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)


def nfa_step(n: Nfa, current: frozenset, symbol: str) -> frozenset:
    moved = {t.target for t in n.rules if t.symbol == symbol and t.source in current}
    return epsilon_closure(n, moved)


def nfa_accepts(n: Nfa, w: Union[str, Sequence[str]]) -> bool:
    w = as_word(w)
    for a in w:
        if a not in n.alphabet:
            raise ValueError(f"symbol {a!r} is not in the alphabet")
    current = epsilon_closure(n, [n.start])
    for a in w:
        current = nfa_step(n, current, a)
        if not current:
            return False
    return bool(current & n.finals)


def nfa_enumerate(n: Nfa, max_len: int) -> set:
    """All accepted words of length at most ``max_len`` (subset construction, breadth-first)."""
    out = set()
    layer = {(): epsilon_closure(n, [n.start])}
    symbols = sorted(n.alphabet)
    for length in range(max_len + 1):
        nxt = {}
        for w, current in layer.items():
            if current & n.finals:
                out.add(w)
            if length == max_len:
                continue
            for a in symbols:
                moved = nfa_step(n, current, a)
                if moved:
                    nxt[w + (a,)] = moved
        layer = nxt
    return out


def nfa_reverse_index(n: Nfa) -> dict:
    """Map ``(target, symbol)`` to the sources of matching transitions."""
    index = {}
    for t in n.rules:
        index.setdefault((t.target, t.symbol), []).append(t.source)
    return index


def words_upto(alphabet: Iterable[str], max_len: int):
    symbols = sorted(alphabet)
    for length in range(max_len + 1):
        yield from product(symbols, repeat=length)


def reachable_states(m: Ietwgfa) -> set:
    graph = {}
    for r in m.rules:
        graph.setdefault(r.state, set()).add(r.target)
    seen = {m.start}
    queue = deque([m.start])
    while queue:
        for nxt in graph.get(queue.popleft(), ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen
