"""Membership, witness traces and bounded enumeration under the four computation modes.

A run on a word ``w`` starts from a split ``k`` with the head between
``w[:k]`` and ``w[k:]``. The erased region ``w[a:b]`` only ever grows outward,
so a run is a walk through configurations ``(a, b, state, phase)``. The phase
tracks whatever history the mode needs:

* general: nothing (``None``)
* alt: direction of the previous move
* even: ``(previous direction, open pair length or None)``
* init-even: ``"start"`` before the first move, then an even phase
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .core import Direction, Ietwgfa, Rule, as_word

L, R, N = Direction.LEFT, Direction.RIGHT, Direction.NEUTRAL


class Mode(enum.Enum):
    GENERAL = "general"
    ALTERNATING = "alt"
    EVEN = "even"
    INIT_EVEN = "init-even"

    @classmethod
    def parse(cls, value: Union[str, "Mode"]) -> "Mode":
        if isinstance(value, Mode):
            return value
        for mode in cls:
            if value in (mode.value, mode.name.lower()):
                return mode
        raise ValueError(f"unknown mode {value!r}")


_EVEN_START = (None, None)
_INIT_START = "start"


def initial_phase(mode: Mode):
    return {
        Mode.GENERAL: None,
        Mode.ALTERNATING: None,
        Mode.EVEN: _EVEN_START,
        Mode.INIT_EVEN: _INIT_START,
    }[mode]


def phase_accepts(mode: Mode, phase) -> bool:
    if mode is Mode.EVEN:
        return phase[1] is None
    if mode is Mode.INIT_EVEN:
        return phase != _INIT_START and phase[1] is None
    return True


def _even_step(phase, direction: Direction, length: int):
    last, pending = phase
    if pending is None:
        if last is not None and direction is last:
            return None
        return (direction, length)
    if direction is last or length != pending:
        return None
    return (direction, None)


def advance(mode: Mode, phase, direction: Direction, length: int):
    """Phase after a move in ``direction`` reading ``length`` symbols, or None if illegal.

    ``direction`` is the assigned direction: a rule's own direction for
    symbol-reading rules, and LEFT or RIGHT for an ε-rule in the alternating
    and even modes. NEUTRAL is only accepted where direction is irrelevant
    (general mode and the free first move of an init-even run).
    """
    if mode is Mode.GENERAL:
        return None
    if mode is Mode.INIT_EVEN and phase == _INIT_START:
        return _EVEN_START
    if direction is N:
        return None
    if mode is Mode.ALTERNATING:
        if phase is not None and direction is phase:
            return None
        return direction
    return _even_step(phase, direction, length)


def move_directions(mode: Mode, phase, rule: Rule) -> tuple:
    """Directions to try for ``rule``; ε-rules get both readings where it matters."""
    if not rule.is_epsilon:
        return (rule.direction,)
    if mode is Mode.GENERAL or (mode is Mode.INIT_EVEN and phase == _INIT_START):
        return (N,)
    return (L, R)


@dataclass(frozen=True)
class Configuration:
    word: tuple
    a: int
    b: int
    state: str
    phase: object
    mode: Mode

    @property
    def left_part(self) -> tuple:
        return self.word[: self.a]

    @property
    def right_part(self) -> tuple:
        return self.word[self.b:]

    @property
    def erased(self) -> tuple:
        return self.word[self.a: self.b]

    def is_accepting(self, finals) -> bool:
        return (self.a == 0 and self.b == len(self.word) and self.state in finals
                and phase_accepts(self.mode, self.phase))


def start_configuration(w, split: int, state: str, mode: Mode) -> Configuration:
    w = as_word(w)
    if not 0 <= split <= len(w):
        raise ValueError(f"split {split} outside 0..{len(w)}")
    return Configuration(w, split, split, state, initial_phase(mode), mode)


def apply_rule(c: Configuration, rule: Rule, direction: Direction) -> Optional[Configuration]:
    """One move, or None when the rule does not apply here."""
    if rule.state != c.state:
        return None
    if not rule.is_epsilon and direction is not rule.direction:
        return None
    n = len(rule.read)
    a, b = c.a, c.b
    if direction is L and n:
        if a < n or c.word[a - n: a] != rule.read:
            return None
        a -= n
    elif direction is R and n:
        if b + n > len(c.word) or c.word[b: b + n] != rule.read:
            return None
        b += n
    phase = advance(c.mode, c.phase, direction, n)
    if phase is None and c.mode is not Mode.GENERAL:
        return None
    return Configuration(c.word, a, b, rule.target, phase, c.mode)


# -- search -----------------------------------------------------------------

def _check_word(m: Ietwgfa, w: tuple) -> None:
    for sym in w:
        if sym not in m.alphabet:
            raise ValueError(f"symbol {sym!r} is not in the alphabet")


def _index(m: Ietwgfa) -> dict:
    by_state = {}
    for i, r in enumerate(m.rules):
        by_state.setdefault(r.state, []).append((i, r))
    return by_state


def _successors(w: tuple, mode: Mode, by_state: dict, node) -> Iterator:
    a, b, state, phase = node
    for i, rule in by_state.get(state, ()):
        n = len(rule.read)
        for d in move_directions(mode, phase, rule):
            na, nb = a, b
            if n and d is L:
                if a < n or w[a - n: a] != rule.read:
                    continue
                na = a - n
            elif n:
                if b + n > len(w) or w[b: b + n] != rule.read:
                    continue
                nb = b + n
            nphase = advance(mode, phase, d, n)
            if nphase is None and mode is not Mode.GENERAL:
                continue
            yield i, d, rule.read, (na, nb, rule.target, nphase)


def _sources(w: tuple, m: Ietwgfa, mode: Mode, split: Optional[int]) -> list:
    splits = range(len(w) + 1) if split is None else [split]
    phase = initial_phase(mode)
    return [(k, k, m.start, phase) for k in splits]


def accepts(m: Ietwgfa, w, mode: Union[Mode, str] = Mode.GENERAL, split: Optional[int] = None) -> bool:
    """True iff some split admits a mode-legal computation erasing all of ``w``."""
    return trace(m, w, mode, split) is not None


@dataclass(frozen=True)
class Trace:
    split: int
    moves: tuple  # of (rule index, assigned direction, consumed symbols)
    final_state: str

    def describe(self, m: Ietwgfa) -> str:
        lines = [f"split {self.split}"]
        for i, d, read in self.moves:
            shown = " ".join(read) if read else "_"
            lines.append(f"{m.rules[i]}  [{d.value}] reads {shown}")
        lines.append(f"accept in {self.final_state}")
        return "\n".join(lines)


def trace(m: Ietwgfa, w, mode: Union[Mode, str] = Mode.GENERAL, split: Optional[int] = None) -> Optional[Trace]:
    """A shortest accepting computation, or None.

    Breadth-first search seeded with the splits in ascending order, expanding
    rules in declaration order and LEFT before RIGHT for ε-rules, so the
    returned witness is the first shortest one in that order.
    """
    mode = Mode.parse(mode)
    w = as_word(w)
    _check_word(m, w)
    by_state = _index(m)
    parent = {}
    queue = deque()
    for node in _sources(w, m, mode, split):
        if node not in parent:
            parent[node] = None
            queue.append(node)
    end = len(w)
    while queue:
        node = queue.popleft()
        a, b, state, phase = node
        if a == 0 and b == end and state in m.finals and phase_accepts(mode, phase):
            return _unwind(parent, node)
        for i, d, read, nxt in _successors(w, mode, by_state, node):
            if nxt not in parent:
                parent[nxt] = (node, (i, d, read))
                queue.append(nxt)
    return None


def _unwind(parent: dict, node) -> Trace:
    moves = []
    final_state = node[2]
    while parent[node] is not None:
        node, move = parent[node]
        moves.append(move)
    moves.reverse()
    return Trace(node[0], tuple(moves), final_state)


def replay(m: Ietwgfa, w, mode: Union[Mode, str], t: Trace) -> Configuration:
    """Re-run a trace through ``apply_rule``; raises ValueError if any move is illegal."""
    mode = Mode.parse(mode)
    c = start_configuration(w, t.split, m.start, mode)
    for i, d, read in t.moves:
        rule = m.rules[i]
        if rule.read != tuple(read):
            raise ValueError(f"move {i} consumed {read!r}, rule reads {rule.read!r}")
        nxt = apply_rule(c, rule, d)
        if nxt is None:
            raise ValueError(f"rule {rule} cannot be applied in {d.value} direction")
        c = nxt
    return c


def enumerate_language(m: Ietwgfa, mode: Union[Mode, str], max_len: int) -> set:
    """Every word of length at most ``max_len`` accepted under ``mode``.

    Runs are generated rather than checked: the erased middle is grown by
    prepending (left moves) or appending (right moves) what each rule reads.
    """
    mode = Mode.parse(mode)
    by_state = _index(m)
    start = ((), m.start, initial_phase(mode))
    seen = {start}
    queue = deque([start])
    out = set()
    while queue:
        middle, state, phase = queue.popleft()
        if state in m.finals and phase_accepts(mode, phase):
            out.add(middle)
        for _, rule in by_state.get(state, ()):
            n = len(rule.read)
            if len(middle) + n > max_len:
                continue
            for d in move_directions(mode, phase, rule):
                nphase = advance(mode, phase, d, n)
                if nphase is None and mode is not Mode.GENERAL:
                    continue
                grown = rule.read + middle if d is L else middle + rule.read
                node = (grown, rule.target, nphase)
                if node not in seen:
                    seen.add(node)
                    queue.append(node)
    return out

