"""Brute-force reference semantics, bounded equivalence and random instances.

Nothing here reuses the configuration-graph search of ``simulation``. The
recognizer below rewrites explicit ``(u, q, v)`` string configurations and
keeps its own literal record of the move history, so the two can be played
off against each other in differential tests.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

from .core import (Ietwgfa, Nfa, Rule, Transition, as_word, nfa_accepts, nfa_enumerate,
                   words_upto)
from .grammars import GrammarRule, LinearGrammar, lg_enumerate
from .simulation import Mode, enumerate_language

# -- reference recognizer ----------------------------------------------------


def _history_start(mode: Mode):
    if mode is Mode.INIT_EVEN:
        return ("init",)
    # moves made so far (0, 1 or "many"), parity of that count, last side, last length
    return ("moves", 0, 0, "", -1)


def _extend_history(mode: Mode, hist, side: str, length: int):
    """History after one more move, or None if the mode forbids it.

    ``side`` is "L", "R" or "" for an ε-move whose side is left open.
    """
    if mode is Mode.GENERAL:
        return hist
    if hist[0] == "init":
        return ("moves", 0, 0, "", -1)
    _, made, parity, last, last_len = hist
    if not side:
        return None
    if made and side == last:
        return None
    if mode is not Mode.ALTERNATING and parity == 1 and length != last_len:
        return None
    return ("moves", min(made + 1, 2), 1 - parity, side, length)


def _history_final(mode: Mode, hist) -> bool:
    if mode in (Mode.GENERAL, Mode.ALTERNATING):
        return True
    if hist[0] == "init":
        return False
    return hist[2] == 0


def _sides(mode: Mode, hist, rule: Rule) -> tuple:
    if rule.read:
        return (rule.direction.value,)
    if mode is Mode.GENERAL or hist[0] == "init":
        return ("",)
    return ("L", "R")


def oracle_accepts(m: Ietwgfa, w, mode: Union[Mode, str] = Mode.GENERAL,
                   split: Optional[int] = None) -> bool:
    """Depth-first search over explicit ``(u, state, v, history)`` configurations."""
    mode = Mode.parse(mode)
    w = as_word(w)
    for sym in w:
        if sym not in m.alphabet:
            raise ValueError(f"symbol {sym!r} is not in the alphabet")
    rules = list(m.rules)
    # ε-moves never change (u, v); a run of more than this many of them in a
    # row must revisit a configuration and can be cut short
    eps_cap = max(1, len(m.states)) * 8
    splits = range(len(w) + 1) if split is None else (split,)
    seen = set()
    stack = [(w[:k], m.start, w[k:], _history_start(mode), 0) for k in reversed(splits)]
    while stack:
        u, q, v, hist, eps_run = stack.pop()
        key = (u, q, v, hist)
        if key in seen:
            continue
        seen.add(key)
        if not u and not v and q in m.finals and _history_final(mode, hist):
            return True
        for rule in rules:
            if rule.state != q:
                continue
            x = rule.read
            for side in _sides(mode, hist, rule):
                if side == "L":
                    if len(u) < len(x) or u[len(u) - len(x):] != x:
                        continue
                    nu, nv = u[: len(u) - len(x)], v
                elif side == "R":
                    if v[: len(x)] != x:
                        continue
                    nu, nv = u, v[len(x):]
                else:
                    nu, nv = u, v
                nhist = _extend_history(mode, hist, side, len(x))
                if nhist is None:
                    continue
                run = eps_run + 1 if not x else 0
                if run > eps_cap:
                    continue
                stack.append((nu, rule.target, nv, nhist, run))
    return False


def oracle_language(m: Ietwgfa, mode: Union[Mode, str], max_len: int) -> set:
    mode = Mode.parse(mode)
    return {w for w in words_upto(m.alphabet, max_len) if oracle_accepts(m, w, mode)}


def oracle_grammar_language(g: LinearGrammar, max_len: int) -> set:
    """Breadth-first expansion of sentential forms ``(u, A, v)`` with ``|uv| <= max_len``."""
    by_lhs = {}
    for r in g.rules:
        by_lhs.setdefault(r.lhs, []).append(r)
    out = set()
    start = ((), g.start, ())
    seen = {start}
    queue = deque([start])
    while queue:
        u, a, v = queue.popleft()
        for r in by_lhs.get(a, ()):
            nu, nv = u + r.x, r.y + v
            if len(nu) + len(nv) > max_len:
                continue
            if r.mid is None:
                out.add(nu + nv)
                continue
            form = (nu, r.mid, nv)
            if form not in seen:
                seen.add(form)
                queue.append(form)
    return out


# -- restriction oracles -----------------------------------------------------


def sides_oracle(m: Ietwgfa, a: Nfa, b: Nfa, max_len: int) -> set:
    """``{uv : usv accepted with the split at |u|, u in L(a), v in L(b)}`` by brute force."""
    out = set()
    for w in words_upto(m.alphabet, max_len):
        for k in range(len(w) + 1):
            if nfa_accepts(a, w[:k]) and nfa_accepts(b, w[k:]) and oracle_accepts(m, w, split=k):
                out.add(w)
                break
    return out


def whole_oracle(m: Ietwgfa, a: Nfa, max_len: int) -> set:
    return {w for w in words_upto(m.alphabet, max_len)
            if nfa_accepts(a, w) and oracle_accepts(m, w)}


def finite_prefix_oracle(m: Ietwgfa, prefixes: Iterable, b: Nfa, max_len: int) -> set:
    prefixes = {as_word(p) for p in prefixes}
    out = set()
    for w in words_upto(m.alphabet, max_len):
        for k in range(len(w) + 1):
            if w[:k] in prefixes and nfa_accepts(b, w[k:]) and oracle_accepts(m, w, split=k):
                out.add(w)
                break
    return out


def middle_oracle(m: Ietwgfa, a: Nfa, b: Nfa, c: Nfa, max_len: int, outer_len: int) -> set:
    """``{v : usvw accepted with the split at |u|, u in L(a), v in L(b), w in L(c)}``.

    Only ``u`` and ``w`` of length at most ``outer_len`` are tried, so the
    result is exact when ``L(a)`` and ``L(c)`` contain no longer words.
    """
    lefts = nfa_enumerate(a, outer_len)
    rights = nfa_enumerate(c, outer_len)
    out = set()
    for v in words_upto(m.alphabet, max_len):
        if not nfa_accepts(b, v):
            continue
        if any(oracle_accepts(m, u + v + w, split=len(u)) for u in lefts for w in rights):
            out.add(v)
    return out


# -- bounded equivalence -----------------------------------------------------


@dataclass(frozen=True)
class EquivResult:
    equal: bool
    counterexample: Optional[tuple]
    bound: int


LanguageSource = Union[Callable[[int], set], set, frozenset, Ietwgfa, Nfa, LinearGrammar, tuple]


def bounded_language(source: LanguageSource, max_len: int) -> set:
    """The words of length at most ``max_len`` described by ``source``.

    A machine on its own is read in general mode; pass ``(machine, mode)``
    for another mode.
    """
    if isinstance(source, Ietwgfa):
        return enumerate_language(source, Mode.GENERAL, max_len)
    if isinstance(source, tuple) and len(source) == 2 and isinstance(source[0], Ietwgfa):
        return enumerate_language(source[0], Mode.parse(source[1]), max_len)
    if isinstance(source, Nfa):
        return nfa_enumerate(source, max_len)
    if isinstance(source, LinearGrammar):
        return lg_enumerate(source, max_len)
    if isinstance(source, (set, frozenset)):
        return {as_word(w) for w in source if len(as_word(w)) <= max_len}
    if callable(source):
        return {as_word(w) for w in source(max_len)}
    raise TypeError(f"cannot read a language from {type(source).__name__}")


def equiv_up_to(l1: LanguageSource, l2: LanguageSource, max_len: int) -> EquivResult:
    diff = bounded_language(l1, max_len) ^ bounded_language(l2, max_len)
    if not diff:
        return EquivResult(True, None, max_len)
    return EquivResult(False, min(diff, key=lambda w: (len(w), w)), max_len)


# -- random instances --------------------------------------------------------


@dataclass(frozen=True)
class GenConfig:
    max_states: int = 4
    max_rules: int = 6
    max_segment_len: int = 2
    alphabet_size: int = 3
    seed: int = 0

    def with_seed(self, seed: int) -> "GenConfig":
        return GenConfig(self.max_states, self.max_rules, self.max_segment_len,
                         self.alphabet_size, seed)


_SYMBOLS = "abcdefghijklmnopqrstuvwxyz"


def _alphabet(rng: random.Random, cfg: GenConfig) -> list:
    if not 1 <= cfg.alphabet_size <= len(_SYMBOLS):
        raise ValueError("alphabet_size must be between 1 and 26")
    return list(_SYMBOLS[: rng.randint(1, cfg.alphabet_size)])


def _segment(rng: random.Random, symbols: list, length: int) -> tuple:
    return tuple(rng.choice(symbols) for _ in range(length))


def random_gfa(cfg: GenConfig) -> Ietwgfa:
    if cfg.max_states < 1:
        raise ValueError("max_states must be at least 1")
    rng = random.Random(cfg.seed)
    states = [f"q{i}" for i in range(rng.randint(1, cfg.max_states))]
    symbols = _alphabet(rng, cfg)
    rules = []
    for _ in range(rng.randint(0, cfg.max_rules)):
        source, target = rng.choice(states), rng.choice(states)
        form = rng.choice(("left", "right", "epsilon"))
        if form == "epsilon" or cfg.max_segment_len < 1:
            rules.append(Rule.epsilon(source, target))
            continue
        read = _segment(rng, symbols, rng.randint(1, cfg.max_segment_len))
        if form == "left":
            rules.append(Rule.left(read, source, target))
        else:
            rules.append(Rule.right(source, read, target))
    finals = {q for q in states if rng.random() < 0.4}
    finals.add(rng.choice(states))
    return Ietwgfa(states, symbols, rules, states[0], finals)


def random_lg(cfg: GenConfig, even: bool = False) -> LinearGrammar:
    if cfg.max_states < 1:
        raise ValueError("max_states must be at least 1")
    rng = random.Random(cfg.seed)
    nonterminals = [f"N{i}" for i in range(rng.randint(1, cfg.max_states))]
    symbols = _alphabet(rng, cfg)
    seg = cfg.max_segment_len
    rules = []
    for _ in range(rng.randint(0, cfg.max_rules)):
        lhs = rng.choice(nonterminals)
        if rng.random() < 0.35:
            rules.append(GrammarRule.terminal(lhs, _segment(rng, symbols, rng.randint(0, seg))))
            continue
        lx = rng.randint(0, seg)
        ly = lx if even else rng.randint(0, seg)
        rules.append(GrammarRule.linear(lhs, _segment(rng, symbols, lx), rng.choice(nonterminals),
                                        _segment(rng, symbols, ly)))
    return LinearGrammar(nonterminals, symbols, rules, nonterminals[0])


def random_nfa(cfg: GenConfig, alphabet: Optional[Iterable[str]] = None,
               epsilon_free: bool = True, acyclic: bool = False) -> Nfa:
    """A random classical NFA; ``acyclic`` ones accept finite languages."""
    rng = random.Random(cfg.seed)
    symbols = sorted(alphabet) if alphabet is not None else _alphabet(rng, cfg)
    states = [f"p{i}" for i in range(rng.randint(1, max(1, cfg.max_states)))]
    rules = []
    for _ in range(rng.randint(0, cfg.max_rules)):
        i = rng.randrange(len(states))
        j = rng.randrange(i + 1, len(states) + 1) if acyclic else rng.randrange(len(states))
        if j == len(states):
            continue
        symbol = None if not epsilon_free and rng.random() < 0.2 else rng.choice(symbols)
        rules.append(Transition(states[i], symbol, states[j]))
    finals = {q for q in states if rng.random() < 0.4}
    finals.add(rng.choice(states))
    return Nfa(states, symbols, rules, states[0], finals)


def random_finite_language(cfg: GenConfig, alphabet: Iterable[str], max_words: int = 3) -> set:
    rng = random.Random(cfg.seed)
    symbols = sorted(alphabet)
    return {_segment(rng, symbols, rng.randint(0, cfg.max_segment_len))
            for _ in range(rng.randint(0, max_words))}
