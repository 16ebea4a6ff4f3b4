"""Linear and even linear grammars: validation, membership and bounded enumeration."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .core import Violation, as_word, check_token


@dataclass(frozen=True)
class GrammarRule:
    """``lhs -> x mid y``; a terminal rule has ``mid`` None and its whole string in ``x``."""

    lhs: str
    x: tuple
    mid: Optional[str] = None
    y: tuple = ()

    def __post_init__(self):
        x, y = tuple(self.x), tuple(self.y)
        if self.mid is None:
            x, y = x + y, ()
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def terminal(cls, lhs: str, x: Union[str, Sequence[str]] = ()) -> "GrammarRule":
        return cls(lhs, as_word(x))

    @classmethod
    def linear(cls, lhs: str, x, mid: str, y) -> "GrammarRule":
        return cls(lhs, as_word(x), mid, as_word(y))

    @property
    def rhs(self) -> tuple:
        middle = () if self.mid is None else (self.mid,)
        return self.x + middle + self.y

    def __str__(self):
        return f"{self.lhs} -> " + (" ".join(self.rhs) if self.rhs else "_")


@dataclass(frozen=True)
class LinearGrammar:
    nonterminals: frozenset
    terminals: frozenset
    rules: tuple
    start: str

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "rules", tuple(dict.fromkeys(self.rules)))

    def __str__(self):
        from .textformat import serialize
        return serialize(self)


@dataclass(frozen=True)
class EvenLinearWitness:
    even: bool
    offending_rule: Optional[GrammarRule] = None


def validate_grammar(g: LinearGrammar) -> list:
    out = []
    if not g.nonterminals:
        out.append(Violation("empty-nonterminals", "nonterminals", "nonterminal set is empty"))
    for name in sorted(g.nonterminals & g.terminals):
        out.append(Violation("disjointness", name, "name is both a nonterminal and a terminal"))
    for name in sorted(g.nonterminals):
        out += check_token(name, "nonterminal")
    for name in sorted(g.terminals):
        out += check_token(name, "terminal")
    if g.start not in g.nonterminals:
        out.append(Violation("start", str(g.start), "start nonterminal is not declared"))
    for rule in g.rules:
        refs = [rule.lhs] + ([] if rule.mid is None else [rule.mid])
        for name in refs:
            if name not in g.nonterminals:
                out.append(Violation("rule-nonterminal", name, f"undeclared nonterminal in rule {rule}"))
        for sym in rule.x + rule.y:
            if sym not in g.terminals:
                out.append(Violation("rule-terminal", sym, f"undeclared terminal in rule {rule}"))
    return out


def is_even_linear(g: LinearGrammar) -> EvenLinearWitness:
    for rule in g.rules:
        if rule.mid is not None and len(rule.x) != len(rule.y):
            return EvenLinearWitness(False, rule)
    return EvenLinearWitness(True)


def lg_accepts(g: LinearGrammar, w) -> bool:
    """True iff the start symbol derives ``w``.

    Fills, for spans of increasing length, the set of nonterminals deriving
    ``w[i:j]``. Rules with terminals on either side only consult strictly
    shorter spans; unit rules ``A -> B`` are closed within a span.
    """
    w = as_word(w)
    for sym in w:
        if sym not in g.terminals:
            raise ValueError(f"symbol {sym!r} is not a terminal")
    n = len(w)
    unit = [r for r in g.rules if r.mid is not None and not r.x and not r.y]
    framed = [r for r in g.rules if r.mid is not None and (r.x or r.y)]
    terminal = [r for r in g.rules if r.mid is None]
    table = {}
    for length in range(n + 1):
        for i in range(n - length + 1):
            j = i + length
            span = w[i:j]
            cell = {r.lhs for r in terminal if r.x == span}
            for r in framed:
                lx, ly = len(r.x), len(r.y)
                if lx + ly > length:
                    continue
                if span[:lx] == r.x and span[length - ly:] == r.y and r.mid in table[(i + lx, j - ly)]:
                    cell.add(r.lhs)
            changed = True
            while changed:
                changed = False
                for r in unit:
                    if r.mid in cell and r.lhs not in cell:
                        cell.add(r.lhs)
                        changed = True
            table[(i, j)] = cell
    return g.start in table[(0, n)]


def derivable_words(g: LinearGrammar, max_len: int) -> dict:
    """For every nonterminal, the words of length at most ``max_len`` it derives."""
    words = {a: set() for a in g.nonterminals}
    for r in g.rules:
        if r.mid is None and len(r.x) <= max_len:
            words.setdefault(r.lhs, set()).add(r.x)
    framed = [r for r in g.rules if r.mid is not None]
    frontier = {a: set(ws) for a, ws in words.items()}
    while any(frontier.values()):
        fresh = {}
        for r in framed:
            budget = max_len - len(r.x) - len(r.y)
            if budget < 0:
                continue
            for u in frontier.get(r.mid, ()):
                if len(u) <= budget:
                    v = r.x + u + r.y
                    if v not in words.setdefault(r.lhs, set()):
                        fresh.setdefault(r.lhs, set()).add(v)
        for a, ws in fresh.items():
            words[a] |= ws
        frontier = fresh
    return words


def lg_enumerate(g: LinearGrammar, max_len: int) -> set:
    return set(derivable_words(g, max_len).get(g.start, ()))
