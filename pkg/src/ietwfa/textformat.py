"""Line-based text format for automata, NFAs, linear grammars and finite languages.

Example::

    type: ietwgfa
    states: q s
    alphabet: a b
    start: s
    final: s
    rule: a s -> q
    rule: q b -> s

A rule's state token decides its shape: ``x.. q -> p`` is a left rule,
``q x.. -> p`` a right rule and ``q -> p`` an ε-rule. ``_`` stands for the
empty string. Tokens that are not plain identifiers are double-quoted.
Blank lines and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import re
import shlex
from dataclasses import dataclass
from typing import Union

from .core import Ietwgfa, Nfa, Rule, Transition, as_word
from .grammars import GrammarRule, LinearGrammar

EPSILON = "_"
ARROW = "->"

_PLAIN = re.compile(r"^[A-Za-z0-9_.\-]+$")

_HEADERS = {
    "ietwgfa": ("states", "alphabet", "start", "final"),
    "nfa": ("states", "alphabet", "start", "final"),
    "lg": ("nonterminals", "terminals", "start"),
    "finite": ("alphabet",),
}
_REPEATED = {"ietwgfa": "rule", "nfa": "rule", "lg": "rule", "finite": "word"}


@dataclass(frozen=True)
class FiniteLanguage:
    """An explicit finite set of words over ``alphabet``."""

    alphabet: frozenset
    words: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "words", frozenset(as_word(w) for w in self.words))


Document = Union[Ietwgfa, Nfa, LinearGrammar, FiniteLanguage]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message, self.line, self.column = message, line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


# -- writing --------------------------------------------------------------------


def quote(token: str) -> str:
    if _PLAIN.match(token) and token != ARROW:
        return token
    return '"' + token.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _tokens(items) -> str:
    return " ".join(quote(t) for t in items)


def _line(key: str, items) -> str:
    body = _tokens(items)
    return f"{key}: {body}" if body else f"{key}:"


def _rule_line(lhs, rhs) -> str:
    return f"rule: {_tokens(lhs)} {ARROW} {_tokens(rhs)}"


def _word_tokens(word) -> list:
    return list(word) if word else [EPSILON]


def serialize(doc: Document) -> str:
    """Canonical text: fixed header order, sorted sets, rules in declaration order."""
    if isinstance(doc, Ietwgfa):
        lines = ["type: ietwgfa", _line("states", sorted(doc.states)), _line("alphabet", sorted(doc.alphabet)),
                 _line("start", [doc.start]), _line("final", sorted(doc.finals))]
        lines += [_rule_line(r.lhs, [r.target]) for r in doc.rules]
    elif isinstance(doc, Nfa):
        lines = ["type: nfa", _line("states", sorted(doc.states)), _line("alphabet", sorted(doc.alphabet)),
                 _line("start", [doc.start]), _line("final", sorted(doc.finals))]
        for t in doc.rules:
            lhs = [t.source] if t.symbol is None else [t.source, t.symbol]
            lines.append(_rule_line(lhs, [t.target]))
    elif isinstance(doc, LinearGrammar):
        lines = ["type: lg", _line("nonterminals", sorted(doc.nonterminals)),
                 _line("terminals", sorted(doc.terminals)), _line("start", [doc.start])]
        lines += [_rule_line([r.lhs], _word_tokens(r.rhs)) for r in doc.rules]
    elif isinstance(doc, FiniteLanguage):
        lines = ["type: finite", _line("alphabet", sorted(doc.alphabet))]
        lines += [_line("word", _word_tokens(w)) for w in sorted(doc.words, key=lambda w: (len(w), w))]
    else:
        raise TypeError(f"cannot serialize {type(doc).__name__}")
    return "\n".join(lines) + "\n"


# -- reading --------------------------------------------------------------------


def _split(text: str, line_no: int, offset: int) -> list:
    try:
        return shlex.split(text, posix=True)
    except ValueError as exc:
        raise ParseError(str(exc), line_no, offset + 1) from None


class _Line:
    def __init__(self, number: int, raw: str, key: str, tokens: list, body_at: int):
        self.number, self.raw, self.key, self.tokens, self.body_at = number, raw, key, tokens, body_at

    def error(self, message: str, token: str = None) -> ParseError:
        column = self.body_at + 1
        if token is not None:
            found = self.raw.find(token, self.body_at)
            if found >= 0:
                column = found + 1
        return ParseError(message, self.number, column)


def _lines(text: str) -> list:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if ":" not in raw:
            raise ParseError("expected 'key: values'", number, len(raw) - len(raw.lstrip()) + 1)
        colon = raw.index(":")
        key = raw[:colon].strip()
        out.append(_Line(number, raw, key, _split(raw[colon + 1:], number, colon + 1), colon + 1))
    return out


def parse_spec(text: str) -> Document:
    """Parse any of the four document kinds; raises ParseError with a location."""
    lines = _lines(text)
    if not lines or lines[0].key != "type":
        raise ParseError("document must start with 'type:'", lines[0].number if lines else 1, 1)
    head = lines[0]
    if len(head.tokens) != 1 or head.tokens[0] not in _HEADERS:
        raise head.error(f"unknown type; expected one of {', '.join(sorted(_HEADERS))}")
    kind = head.tokens[0]
    headers, repeated = {}, []
    for ln in lines[1:]:
        if ln.key == _REPEATED[kind]:
            repeated.append(ln)
        elif ln.key in _HEADERS[kind]:
            if ln.key in headers:
                raise ln.error(f"duplicate '{ln.key}' header")
            headers[ln.key] = ln
        else:
            raise ParseError(f"unexpected key '{ln.key}' in {kind} document", ln.number, 1)
    for key in _HEADERS[kind]:
        if key not in headers:
            raise ParseError(f"missing '{key}' header", head.number, 1)
    return {"ietwgfa": _parse_machine, "nfa": _parse_nfa, "lg": _parse_grammar,
            "finite": _parse_finite}[kind](headers, repeated)


def _single(ln: _Line, allowed: set, what: str) -> str:
    if len(ln.tokens) != 1:
        raise ln.error(f"'{ln.key}' takes exactly one {what}")
    if ln.tokens[0] not in allowed:
        raise ln.error(f"undeclared {what} '{ln.tokens[0]}'", ln.tokens[0])
    return ln.tokens[0]


def _members(ln: _Line, allowed: set, what: str) -> list:
    for tok in ln.tokens:
        if tok not in allowed:
            raise ln.error(f"undeclared {what} '{tok}'", tok)
    return ln.tokens


def _declared(ln: _Line) -> list:
    for tok in ln.tokens:
        if tok in (EPSILON, ARROW):
            raise ln.error(f"'{tok}' is reserved and cannot be declared", tok)
    return ln.tokens


def _arrow(ln: _Line) -> tuple:
    toks = ln.tokens
    if toks.count(ARROW) != 1:
        raise ln.error("rule needs exactly one '->'")
    i = toks.index(ARROW)
    return toks[:i], toks[i + 1:]


def _parse_machine(headers: dict, rules: list) -> Ietwgfa:
    states = set(_declared(headers["states"]))
    alphabet = set(_declared(headers["alphabet"]))
    start = _single(headers["start"], states, "state")
    finals = _members(headers["final"], states, "state")
    parsed = []
    for ln in rules:
        lhs, rhs = _arrow(ln)
        if len(rhs) != 1 or rhs[0] not in states:
            raise ln.error("right-hand side must be a single declared state", rhs[0] if rhs else None)
        lhs = [t for t in lhs if t != EPSILON]
        positions = [i for i, t in enumerate(lhs) if t in states]
        if len(positions) != 1:
            raise ln.error("left-hand side must contain exactly one state")
        for tok in lhs:
            if tok not in states and tok not in alphabet:
                raise ln.error(f"undeclared identifier '{tok}'", tok)
        at = positions[0]
        if len(lhs) == 1:
            parsed.append(Rule.epsilon(lhs[0], rhs[0]))
        elif at == 0:
            parsed.append(Rule.right(lhs[0], tuple(lhs[1:]), rhs[0]))
        elif at == len(lhs) - 1:
            parsed.append(Rule.left(tuple(lhs[:-1]), lhs[-1], rhs[0]))
        else:
            raise ln.error("the state must be first (right rule) or last (left rule)", lhs[at])
    return Ietwgfa(states, alphabet, parsed, start, finals)


def _parse_nfa(headers: dict, rules: list) -> Nfa:
    states = set(_declared(headers["states"]))
    alphabet = set(_declared(headers["alphabet"]))
    start = _single(headers["start"], states, "state")
    finals = _members(headers["final"], states, "state")
    parsed = []
    for ln in rules:
        lhs, rhs = _arrow(ln)
        if len(rhs) != 1 or rhs[0] not in states:
            raise ln.error("right-hand side must be a single declared state", rhs[0] if rhs else None)
        if not lhs or lhs[0] not in states:
            raise ln.error("rule must start with a declared state", lhs[0] if lhs else None)
        rest = [t for t in lhs[1:] if t != EPSILON]
        if len(rest) > 1:
            raise ln.error("an NFA transition reads at most one symbol")
        if rest and rest[0] not in alphabet:
            raise ln.error(f"undeclared symbol '{rest[0]}'", rest[0])
        parsed.append(Transition(lhs[0], rest[0] if rest else None, rhs[0]))
    return Nfa(states, alphabet, parsed, start, finals)


def _parse_grammar(headers: dict, rules: list) -> LinearGrammar:
    nonterminals = set(_declared(headers["nonterminals"]))
    terminals = set(_declared(headers["terminals"]))
    start = _single(headers["start"], nonterminals, "nonterminal")
    parsed = []
    for ln in rules:
        lhs, rhs = _arrow(ln)
        if len(lhs) != 1 or lhs[0] not in nonterminals:
            raise ln.error("left-hand side must be a single declared nonterminal", lhs[0] if lhs else None)
        rhs = [t for t in rhs if t != EPSILON]
        for tok in rhs:
            if tok not in nonterminals and tok not in terminals:
                raise ln.error(f"undeclared identifier '{tok}'", tok)
        mids = [i for i, t in enumerate(rhs) if t in nonterminals]
        if len(mids) > 1:
            raise ln.error("a linear rule has at most one nonterminal on the right")
        if mids:
            i = mids[0]
            parsed.append(GrammarRule(lhs[0], tuple(rhs[:i]), rhs[i], tuple(rhs[i + 1:])))
        else:
            parsed.append(GrammarRule(lhs[0], tuple(rhs)))
    return LinearGrammar(nonterminals, terminals, parsed, start)


def _parse_finite(headers: dict, words: list) -> FiniteLanguage:
    alphabet = set(_declared(headers["alphabet"]))
    parsed = []
    for ln in words:
        word = [t for t in ln.tokens if t != EPSILON]
        for tok in word:
            if tok not in alphabet:
                raise ln.error(f"undeclared symbol '{tok}'", tok)
        parsed.append(tuple(word))
    return FiniteLanguage(alphabet, parsed)


def load(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())
